#pragma once

#include <string>
#include <vector>

#include "vtorus/kernel.hpp"

namespace vtorus {

struct TimePair {
  double s = 0.0;
  double t = 0.0;
};

/// Pairs (s0, s0 + h) for h = min_lag, 2 min_lag, ..., up to max_lag.
std::vector<TimePair> dyadic_time_pairs(double min_lag, double max_lag, double s0 = 0.0);

struct HypothesisHOptions {
  double dt = 1e-3;  ///< grid step for kernels without closed form
  bool adapt_dt = true;
  /// Truncation of the infinite past where the integrand envelope is below this.
  double tail_tol = 1e-12;
  double growth_margin = 0.1;
  unsigned threads = 0;
};

/// Both ratios for one (n, s, t):
///   (i)  int_s^t r(t-u)^2 du / (n^{2(delta-1)} (t-s)^delta)
///   (ii) int_{-inf}^s (r(t-u) - r(s-u))^2 du / (n^{2(delta-1)} (t-s)^delta)
struct HypothesisHEntry {
  int n = 0;
  double s = 0.0;
  double t = 0.0;
  double ratio_i = 0.0;
  double ratio_ii = 0.0;
};

struct HypothesisHWitness {
  int n = 0;
  double s = 0.0;
  double t = 0.0;
  double ratio = 0.0;
};

struct HypothesisHReport {
  std::string kernel_id;
  double delta = 0.0;
  double C_delta = 0.0;  ///< max of both ratio families over the scan
  HypothesisHWitness witness_i;
  HypothesisHWitness witness_ii;
  bool finite = true;
  bool growth_in_n = false;
  bool growth_in_scale = false;
  /// Empirical verdict over the scanned set only: finite supremum and no
  /// growth trend across n or across lag scales.
  bool satisfied = false;
  std::vector<int> n_set;
  std::vector<TimePair> time_pairs;
  std::vector<HypothesisHEntry> entries;  ///< n-major, then time pairs in input order
  std::string note;
};

/// Scans both integral bounds. Requires delta in (0, 1), n >= 1, s <= t, and
/// positive lags covering at least three dyadic scales. The infinite-past
/// integral uses the stationary form int_0^inf (r(u+h) - r(u))^2 du.
HypothesisHReport check_hypothesis_H(const Kernel& kernel, double delta,
                                     const std::vector<int>& n_set,
                                     const std::vector<TimePair>& time_pairs,
                                     const HypothesisHOptions& opts = {});

}  // namespace vtorus
