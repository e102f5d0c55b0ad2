#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "vtorus/kernel.hpp"

namespace vtorus {

enum class ResolventScheme {
  /// r_j (1 - mu dt b_0/2) = b_j + mu dt (b_j r_0/2 + sum_{i=1}^{j-1} b_{j-i} r_i)
  Trapezoidal,
  /// Trapezoidal at dt and dt/2 combined as (4 r_{dt/2} - r_dt)/3 on the coarse nodes.
  RichardsonTrapezoidal,
};

struct ResolventOptions {
  ResolventScheme scheme = ResolventScheme::RichardsonTrapezoidal;
  /// Refuse |mu| dt above this bound.
  double stiffness_limit = 0.5;
  /// Above this many nodes the convolution sums go through FFT power-series
  /// division instead of the O(N^2) recursion. Both solve the same system.
  std::size_t direct_limit = 4096;
};

/// r(j dt, mu) on [0, horizon].
struct ResolventGrid {
  double mu = 0.0;
  double dt = 0.0;
  double horizon = 0.0;
  ResolventScheme scheme = ResolventScheme::RichardsonTrapezoidal;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double time(std::size_t j) const noexcept { return static_cast<double>(j) * dt; }
};

/// Kernel samples b(j dt), j = 0..n-1.
std::vector<double> sample_kernel(const Kernel& kernel, double dt, std::size_t n);

/// Second-kind Volterra solve of r = b + mu (b * r) on a uniform grid.
///
/// Preconditions: mu <= 0, dt divides horizon, |mu| dt within the stiffness
/// limit. Throws InvalidArgument for malformed grids and NumericalFailure when
/// the stiffness guard trips or the solution overflows.
ResolventGrid solve_resolvent(const Kernel& kernel, double mu, double dt, double horizon,
                              const ResolventOptions& opts = {});

/// Max over nodes of |r_j - b_j - mu Q_j(b, r)| where Q_j integrates
/// b(t_j - s) r(s) over [0, t_j] with composite Simpson (trapezoid for j = 1).
double resolvent_residual(const Kernel& kernel, const ResolventGrid& grid);

/// Laplace transform of the grid function by composite Simpson, for real
/// lambda. Caller picks the horizon large enough that the tail is negligible.
double grid_laplace(const ResolventGrid& grid, double lambda);

}  // namespace vtorus
