#pragma once

// Truncated power-series arithmetic on FFTW, used by the fast resolvent path.

#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

namespace vtorus::detail {

/// FFTW's planner is not re-entrant; every plan create/destroy holds this.
std::mutex& fftw_planner_mutex();

/// First n coefficients of a*b.
std::vector<double> series_multiply(std::span<const double> a, std::span<const double> b,
                                    std::size_t n);

/// First n coefficients of 1/d by Newton iteration; requires d[0] != 0.
std::vector<double> series_inverse(std::span<const double> d, std::size_t n);

}  // namespace vtorus::detail
