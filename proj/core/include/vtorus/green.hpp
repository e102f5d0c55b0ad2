#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "vtorus/spectrum.hpp"
#include "vtorus/trend.hpp"

namespace vtorus {

/// Gaussian factor of G_d: exp(-|x+2 pi n|^2 / t) as printed, or the heat
/// kernel scaling exp(-|x+2 pi n|^2 / (4t)).
enum class GdNormalization { AsPrinted, StandardHeat };

std::string_view to_string(GdNormalization n);
GdNormalization parse_normalization(std::string_view s);

enum class GdMethod {
  Quadrature,  ///< trapezoid in u = ln t with step halving
  Bessel,      ///< per-term closed form through K_nu
};

struct GdOptions {
  int lattice_cut = 4;  ///< lattice sum over |n|_inf <= lattice_cut
  double rel_tol = 1e-12;
  GdNormalization normalization = GdNormalization::AsPrinted;
  GdMethod method = GdMethod::Quadrature;
};

struct GdValue {
  double value = 0.0;
  double error = 0.0;          ///< lattice_error + quad_error
  double lattice_error = 0.0;  ///< contribution of the outermost shell
  double quad_error = 0.0;
};

/// One lattice term int_0^inf (4 pi t)^{-d/2} e^{-t} e^{-rho2/(c t)} dt,
/// c = 1 as printed and c = 4 for the heat scaling.
double gd_term(int d, double rho2, GdNormalization norm, GdMethod method, double rel_tol = 1e-12,
               double* quad_error = nullptr);

/// G_d(x) for x in (-pi, pi]^d. x = 0 is singular for d >= 2 and rejected.
GdValue eval_Gd(int d, std::span<const double> x, const GdOptions& opts = {});

/// int over the torus of G_d: 1 for the heat scaling, 2^-d as printed.
double gd_total_mass(int d, GdNormalization norm);

/// int over the torus of G_d(x) e^{-i(n,x)} dx = (c/4)^{d/2} / (1 + c|n|^2/4).
double gd_fourier(int d, long n_abs2, GdNormalization norm);

struct PairingOptions {
  std::vector<int> truncations;  ///< empty: 1, 2, 4, ..., chosen by d
  /// Grid points per dimension are grid_factor * (N + 1), rounded up to even.
  int grid_factor = 4;
  int lattice_cut = 4;
  GdNormalization normalization = GdNormalization::AsPrinted;
  /// Allowed relative negativity of the partial sums on the grid.
  double negativity_tol = 1e-10;
  TrendOptions trend{};
  unsigned threads = 0;
};

struct PairingResult {
  std::vector<int> truncations;
  std::vector<double> values;       ///< midpoint quadrature of Gamma_N G_d
  std::vector<double> min_partial;  ///< min of Gamma_N over the grid
  IncrementTrend trend;
  bool divergent = false;
};

/// (Gamma_N, G_d) for increasing N, with Gamma_N the Cesaro (Fejer) mean of
/// the Fourier partial sums so that it stays nonnegative for nonnegative
/// measures. Throws AssumptionViolation if Gamma_N is negative on the grid.
PairingResult pairing_gamma_Gd(const CovarianceSpectrum& spec, const PairingOptions& opts = {});

}  // namespace vtorus
