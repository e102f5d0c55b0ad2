#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vtorus/kernel.hpp"
#include "vtorus/quadrature.hpp"
#include "vtorus/resolvent.hpp"

namespace vtorus {

/// How a resolvent without a closed form is tabulated.
struct GridSource {
  double dt = 1e-3;
  double initial_horizon = 8.0;
  double max_horizon = 1024.0;
  /// Absolute bound on the neglected tail of r^2 past the final horizon.
  double tail_tol = 1e-12;
  ResolventOptions solver{};
};

/// r(., mu) for one mu, either as a closed form (builtin kernels) or as a
/// solved grid that is treated as zero past its horizon.
class ResolventFunction {
 public:
  static ResolventFunction closed_form(const Kernel& kernel, double mu);
  static ResolventFunction from_grid(ResolventGrid grid);
  /// Closed form for builtins unless force_grid; otherwise solve on doubling
  /// horizons until the r^2 tail is below src.tail_tol.
  static ResolventFunction build(const Kernel& kernel, double mu, const GridSource& src = {},
                                 bool force_grid = false);

  double operator()(double t) const;

  double mu() const noexcept { return mu_; }
  bool is_closed_form() const noexcept { return !grid_.has_value(); }
  const ResolventGrid* grid() const noexcept { return grid_ ? &*grid_ : nullptr; }
  /// Exponential decay rate of |r| (0 when it does not decay); closed form only.
  double decay_rate() const noexcept { return decay_; }
  /// Angular frequency of oscillation; closed form only.
  double frequency() const noexcept { return omega_; }

 private:
  ResolventFunction() = default;

  std::optional<Kernel> kernel_;
  std::optional<ResolventGrid> grid_;
  double mu_ = 0.0;
  double decay_ = 0.0;
  double omega_ = 0.0;
};

struct IntegralOptions {
  double rel_tol = 1e-12;
  double tail_tol = 1e-14;  ///< absolute
  double max_horizon = 1e4;
};

/// int_0^inf r^2; horizon is the truncation point used.
TailQuadrature integral_r2(const ResolventFunction& r, const IntegralOptions& opts = {});

/// int_0^upper r^2.
Quadrature integral_r2_upto(const ResolventFunction& r, double upper,
                            const IntegralOptions& opts = {});

/// rho(h) = int_0^inf r(s) r(s+h) ds.
TailQuadrature autocovariance(const ResolventFunction& r, double h,
                              const IntegralOptions& opts = {});

/// int_0^inf (r(s+h) - r(s))^2 ds.
TailQuadrature increment_energy(const ResolventFunction& r, double h,
                                const IntegralOptions& opts = {});

/// Smallest multiple T of `resolution` with int_T^inf r^2 <= rel_mass * int_0^inf r^2.
double tail_horizon(const ResolventFunction& r, double rel_mass, double resolution,
                    const IntegralOptions& opts = {});

/// Mean of r over [j dt, (j+1) dt] for j = 0..count-1 (3-point Gauss-Legendre).
std::vector<double> cell_averages(const ResolventFunction& r, double dt, std::size_t count);

}  // namespace vtorus
