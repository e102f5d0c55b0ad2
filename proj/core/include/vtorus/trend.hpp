#pragma once

#include <span>
#include <string_view>

namespace vtorus {

enum class SeriesVerdict { Convergent, Divergent, Inconclusive };

std::string_view to_string(SeriesVerdict v);

struct IncrementTrend {
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  double last_ratio = 0.0;  ///< |D_k| / |D_{k-1}| for the final pair of increments
  double last_increment = 0.0;
};

struct TrendOptions {
  double convergent_ratio = 0.75;
  double divergent_ratio = 0.9;
  /// Increments below negligible * |S| count as zero.
  double negligible = 1e-14;
  /// Divergence also requires the last increment above floor * max(1, |S|).
  double floor = 1e-10;
};

/// Verdict from partial sums S_k taken at dyadically growing truncations,
/// using the increments D_k = S_k - S_{k-1}. Needs at least three sums.
/// Convergent when increments vanish or the last two ratios are <= 0.75;
/// divergent when both are >= 0.9 with the last increment above the floor.
IncrementTrend classify_increments(std::span<const double> partial_sums,
                                   const TrendOptions& opts = {});

/// True when the last three values strictly increase and the last exceeds
/// the maximum of the first half by more than `margin` (relative).
bool growth_trend(std::span<const double> values, double margin = 0.1);

}  // namespace vtorus
