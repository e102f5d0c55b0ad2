#pragma once

#include <string>
#include <vector>

#include "vtorus/kernel.hpp"
#include "vtorus/simulate.hpp"
#include "vtorus/spectrum.hpp"
#include "vtorus/stats.hpp"

namespace vtorus {

/// h = 2^lo_exp, ..., 2^hi_exp.
std::vector<double> dyadic_lags(int lo_exp, int hi_exp);

/// E ||X(t+h) - X(t)||^2 in the coefficient L^2 norm for the stationary
/// solution: zero-mode term + sum_{n in Z_s^d, |n|_inf <= n_max} 4 gamma_n (rho_n(0) - rho_n(h)).
/// The zero-mode term is 2 gamma_0 (rho_b(0) - rho_b(h)) when stationary and
/// gamma_0 h when Brownian.
double analytic_increment(const Kernel& kernel, const CovarianceSpectrum& spec, int n_max,
                          ZeroModePolicy policy, double h);

struct HoelderOptions {
  std::vector<double> lags;  ///< multiples of the time-grid spacing
  bool monte_carlo = true;
  std::size_t batch = 250;  ///< paths simulated per batch
};

struct HoelderPoint {
  double h = 0.0;
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  std::size_t pairs = 0;  ///< time pairs averaged per path
};

struct HoelderResult {
  std::vector<HoelderPoint> points;
  LinearFit analytic_fit;
  double delta_analytic = 0.0;
  double eta_analytic = 0.0;
  bool has_mc = false;
  double delta_mc = 0.0;
  double delta_mc_se = 0.0;
  double eta_mc = 0.0;
  /// analytic slope +- 1.96 sqrt(se_analytic^2 + se_mc^2)
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool mc_within_band = false;
};

/// Regresses log E ||X(t+h) - X(t)||^2 on log h over the lag ladder, both
/// from the analytic increment series and from Monte Carlo paths of the
/// convolution scheme. Needs lags over at least four dyadic scales and a
/// spectrum with sum gamma_n / (1+|n|^2) finite.
HoelderResult estimate_hoelder(const Kernel& kernel, const CovarianceSpectrum& spec,
                               const SimulationConfig& config, const HoelderOptions& opts);

}  // namespace vtorus
