#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtorus/kernel.hpp"
#include "vtorus/resolvent_function.hpp"

namespace vtorus {

struct AdmissibilityOptions {
  /// Grid step for kernels without a closed-form resolvent.
  double dt = 1e-3;
  /// Shrink dt per n to 0.25/|n|^2 when the stiffness guard would trip.
  bool adapt_dt = true;
  double tail_tol = 1e-14;
  bool force_grid = false;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// One evaluation of I(n) = |n|^2 int_0^inf r(s, -|n|^2)^2 ds.
struct AdmissibilityPoint {
  double n = 0.0;
  double value = 0.0;     ///< I(n)
  double integral = 0.0;  ///< int_0^inf r^2
  double error = 0.0;     ///< quadrature error estimate of `value`
  double horizon = 0.0;   ///< tail truncation point
};

/// int_0^inf r(s, -n_abs2)^2 ds. Throws AssumptionViolation for non-integrable
/// kernels and NumericalFailure when the tail does not decay.
double squared_resolvent_integral(const Kernel& kernel, double n_abs2, double dt,
                                  double tail_tol = 1e-14);

AdmissibilityPoint admissibility_point(const Kernel& kernel, double n,
                                       const AdmissibilityOptions& opts = {});

std::vector<AdmissibilityPoint> admissibility_curve(const Kernel& kernel,
                                                    const std::vector<double>& n_values,
                                                    const AdmissibilityOptions& opts = {});

struct AdmissibilityReport {
  std::string kernel_id;
  std::vector<AdmissibilityPoint> curve;  ///< ladder n = 2, 4, 8, ...
  /// (4 I(2n) - I(n))/3 for consecutive ladder points; extrapolated[k] pairs
  /// curve[k] with curve[k+1].
  std::vector<double> extrapolated;
  double Cb = 0.0;
  double tol = 0.0;
  bool converged = false;
  std::optional<double> published_value;
  std::string note;
};

/// Ladder n in {2, 4, ..., <= n_max}, Richardson in 1/n^2. Converged when the
/// last three extrapolated values differ pairwise by less than tol.
AdmissibilityReport estimate_Cb(const Kernel& kernel, int n_max, double tol,
                                const AdmissibilityOptions& opts = {});

}  // namespace vtorus
