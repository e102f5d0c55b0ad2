#include "vtorus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

#include "vtorus/error.hpp"

namespace vtorus {

MeanSE mean_se(std::span<const double> x) {
  MeanSE out;
  if (x.empty()) return out;
  double s = 0.0;
  for (double v : x) s += v;
  out.mean = s / static_cast<double>(x.size());
  if (x.size() > 1) out.se = std::sqrt(sample_variance(x) / static_cast<double>(x.size()));
  return out;
}

double sample_variance(std::span<const double> x) { return sample_covariance(x, x); }

double sample_covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("sample_covariance: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (x[i] - mx) * (y[i] - my);
  return acc / static_cast<double>(n - 1);
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.3) {
    // sqrt(2 pi)/x sum exp(-(2k-1)^2 pi^2 / (8 x^2)) converges fast here
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double s = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const double j = 2.0 * k - 1.0;
      s += std::exp(-j * j * pi2 / (8.0 * x * x));
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  const double ne = na * nb / (na + nb);
  const double sq = std::sqrt(ne);
  // Stephens' small-sample correction
  out.p_value = kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d);
  return out;
}

double student_t_quantile(double confidence, double dof) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgument("student_t_quantile: confidence must lie in (0, 1)");
  }
  if (!(dof > 0.0)) throw InvalidArgument("student_t_quantile: dof must be > 0");
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("linear_fit: size mismatch");
  if (x.size() < 3) throw InvalidArgument("linear_fit: need at least three points");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("linear_fit: x values are all equal");
  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    sse += e * e;
  }
  f.residual_sd = std::sqrt(sse / static_cast<double>(n - 2));
  f.slope_se = f.residual_sd / std::sqrt(sxx);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  const double q = student_t_quantile(0.95, static_cast<double>(n - 2));
  f.band_lo = f.slope - q * f.slope_se;
  f.band_hi = f.slope + q * f.slope_se;
  return f;
}

}  // namespace vtorus
