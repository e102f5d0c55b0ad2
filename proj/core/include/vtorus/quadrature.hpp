#pragma once

#include <functional>
#include <span>

namespace vtorus {

struct Quadrature {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
};

struct QuadOptions {
  double rel_tol = 1e-12;  ///< relative to each panel's value
  int panels = 1;          ///< equal sub-intervals integrated independently
  unsigned max_depth = 12;
};

/// Adaptive Gauss-Kronrod on [a, b].
///
/// The interval is cut into `panels` equal pieces before adaptivity starts,
/// which is how callers resolve oscillations the first-level rule would alias.
Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

struct TailOptions {
  double chunk = 1.0;          ///< width of one marching step
  int panels_per_chunk = 1;
  double tail_tol = 1e-12;     ///< absolute bound on the neglected tail
  double max_horizon = 1e4;
  double rel_tol = 1e-12;
};

struct TailQuadrature {
  double value = 0.0;
  double error = 0.0;
  double horizon = 0.0;  ///< truncation point actually used
};

/// Integral of f over [0, inf).
///
/// Marches chunk by chunk and stops once the L1 mass of the last chunks
/// decays geometrically and the extrapolated tail is below tail_tol.
/// Throws NumericalFailure when no such horizon exists below max_horizon.
TailQuadrature integrate_to_infinity(const std::function<double(double)>& f,
                                     const TailOptions& opts);

/// Composite Simpson over equally spaced samples. Falls back to a
/// Simpson 3/8 closing panel for an odd number of intervals and to the
/// trapezoid rule for a single interval.
double simpson(std::span<const double> y, double h);

}  // namespace vtorus
