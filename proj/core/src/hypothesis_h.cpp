#include "vtorus/hypothesis_h.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "parallel.hpp"
#include "vtorus/error.hpp"
#include "vtorus/resolvent_function.hpp"
#include "vtorus/trend.hpp"

namespace vtorus {

std::vector<TimePair> dyadic_time_pairs(double min_lag, double max_lag, double s0) {
  if (!(min_lag > 0.0) || !(max_lag >= min_lag)) {
    throw InvalidArgument("dyadic_time_pairs: need 0 < min_lag <= max_lag");
  }
  std::vector<TimePair> out;
  for (double h = min_lag; h <= max_lag * (1.0 + 1e-12); h *= 2.0) out.push_back({s0, s0 + h});
  return out;
}

HypothesisHReport check_hypothesis_H(const Kernel& kernel, double delta,
                                     const std::vector<int>& n_set,
                                     const std::vector<TimePair>& time_pairs,
                                     const HypothesisHOptions& opts) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("hypothesis H: delta must lie in (0, 1)");
  if (n_set.empty()) throw InvalidArgument("hypothesis H: empty n set");
  for (int n : n_set) {
    if (n < 1) throw InvalidArgument("hypothesis H: n must be >= 1");
  }
  std::set<int> scales;
  for (const auto& p : time_pairs) {
    if (!(p.t >= p.s)) throw InvalidArgument("hypothesis H: time pairs need s <= t");
    if (p.t > p.s) scales.insert(static_cast<int>(std::floor(std::log2(p.t - p.s))));
  }
  if (scales.size() < 3) {
    throw InvalidArgument("hypothesis H: positive lags must span at least three dyadic scales");
  }

  HypothesisHReport rep;
  rep.kernel_id = kernel.id();
  rep.delta = delta;
  rep.n_set = n_set;
  rep.time_pairs = time_pairs;
  rep.entries.resize(n_set.size() * time_pairs.size());

  IntegralOptions io;
  io.tail_tol = opts.tail_tol;
  detail::parallel_for(n_set.size(), opts.threads, [&](std::size_t a) {
    const int n = n_set[a];
    const double m = static_cast<double>(n) * n;
    GridSource src;
    src.dt = opts.adapt_dt && m * opts.dt > 0.25 ? 0.25 / m : opts.dt;
    src.tail_tol = opts.tail_tol;
    const auto r = ResolventFunction::build(kernel, -m, src);
    const double weight = std::pow(static_cast<double>(n), 2.0 * (delta - 1.0));
    for (std::size_t b = 0; b < time_pairs.size(); ++b) {
      auto& e = rep.entries[a * time_pairs.size() + b];
      e.n = n;
      e.s = time_pairs[b].s;
      e.t = time_pairs[b].t;
      const double h = e.t - e.s;
      if (h == 0.0) continue;
      const double denom = weight * std::pow(h, delta);
      e.ratio_i = integral_r2_upto(r, h, io).value / denom;
      e.ratio_ii = increment_energy(r, h, io).value / denom;
    }
  });

  std::vector<double> by_n(n_set.size(), 0.0);
  std::vector<double> lags;
  for (const auto& p : time_pairs) lags.push_back(p.t - p.s);
  std::vector<std::size_t> order(time_pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return lags[x] < lags[y]; });
  std::vector<double> by_scale(time_pairs.size(), 0.0);

  for (std::size_t a = 0; a < n_set.size(); ++a) {
    for (std::size_t b = 0; b < time_pairs.size(); ++b) {
      const auto& e = rep.entries[a * time_pairs.size() + b];
      const double worst = std::max(e.ratio_i, e.ratio_ii);
      if (!std::isfinite(worst)) rep.finite = false;
      by_n[a] = std::max(by_n[a], worst);
      by_scale[b] = std::max(by_scale[b], worst);
      if (e.ratio_i > rep.witness_i.ratio) rep.witness_i = {e.n, e.s, e.t, e.ratio_i};
      if (e.ratio_ii > rep.witness_ii.ratio) rep.witness_ii = {e.n, e.s, e.t, e.ratio_ii};
    }
  }
  rep.C_delta = std::max(rep.witness_i.ratio, rep.witness_ii.ratio);

  // Trends: over n in increasing order, and over lags from the largest down
  // to the smallest (growth as h -> 0 is what would break the bound).
  std::vector<std::size_t> n_order(n_set.size());
  for (std::size_t i = 0; i < n_order.size(); ++i) n_order[i] = i;
  std::stable_sort(n_order.begin(), n_order.end(),
                   [&](std::size_t x, std::size_t y) { return n_set[x] < n_set[y]; });
  std::vector<double> n_profile;
  for (auto i : n_order) n_profile.push_back(by_n[i]);
  std::vector<double> scale_profile;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (lags[*it] > 0.0) scale_profile.push_back(by_scale[*it]);
  }
  rep.growth_in_n = growth_trend(n_profile, opts.growth_margin);
  rep.growth_in_scale = growth_trend(scale_profile, opts.growth_margin);
  rep.satisfied = rep.finite && !rep.growth_in_n && !rep.growth_in_scale;
  rep.note = "empirical verdict over the scanned (n, s, t) set; not a proof";
  return rep;
}

}  // namespace vtorus
