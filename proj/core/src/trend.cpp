#include "vtorus/trend.hpp"

#include <algorithm>
#include <cmath>

#include "vtorus/error.hpp"

namespace vtorus {

std::string_view to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Convergent: return "convergent";
    case SeriesVerdict::Divergent: return "divergent";
    case SeriesVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

IncrementTrend classify_increments(std::span<const double> s, const TrendOptions& opts) {
  if (s.size() < 3) throw InvalidArgument("classify_increments: need at least three partial sums");
  IncrementTrend out;
  const double scale = std::abs(s.back());
  const std::size_t n = s.size();
  const double d1 = std::abs(s[n - 1] - s[n - 2]);
  const double d0 = std::abs(s[n - 2] - s[n - 3]);
  out.last_increment = d1;

  const double tiny = opts.negligible * std::max(scale, 1e-300);
  if (d1 <= tiny && d0 <= tiny) {
    out.verdict = SeriesVerdict::Convergent;
    return out;
  }
  // Ratios over the last two pairs when available, else over the one pair.
  double r_last = d0 > 0.0 ? d1 / d0 : INFINITY;
  double r_prev = r_last;
  if (n >= 4) {
    const double dm = std::abs(s[n - 3] - s[n - 4]);
    r_prev = dm > 0.0 ? d0 / dm : (d0 <= tiny ? 0.0 : INFINITY);
  }
  out.last_ratio = r_last;
  if (d1 <= tiny) r_last = 0.0;
  if (r_last <= opts.convergent_ratio && r_prev <= opts.convergent_ratio) {
    out.verdict = SeriesVerdict::Convergent;
  } else if (r_last >= opts.divergent_ratio && r_prev >= opts.divergent_ratio &&
             d1 > opts.floor * std::max(1.0, scale)) {
    out.verdict = SeriesVerdict::Divergent;
  }
  return out;
}

bool growth_trend(std::span<const double> v, double margin) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  if (!(v[n - 3] < v[n - 2] && v[n - 2] < v[n - 1])) return false;
  const std::size_t half = std::max<std::size_t>(1, n / 2);
  const double head = *std::max_element(v.begin(), v.begin() + static_cast<long>(half));
  return v[n - 1] > head + margin * std::abs(head);
}

}  // namespace vtorus
