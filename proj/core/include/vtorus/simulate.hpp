#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtorus/index_set.hpp"
#include "vtorus/kernel.hpp"
#include "vtorus/spectrum.hpp"
#include "vtorus/stats.hpp"

namespace vtorus {

/// How X_0 is driven.
///   Stationary: X_0(t) = sqrt(gamma_0) int_0^inf b(s) dbeta_0(t - s)
///   Brownian:   X_0(t) = sqrt(gamma_0) beta_0(t), beta_0(0) = 0
enum class ZeroModePolicy { Stationary, Brownian };

std::string_view to_string(ZeroModePolicy p);
ZeroModePolicy parse_zero_mode_policy(std::string_view s);

/// Uniform grid t_k = t0 + k dt, k = 0..count-1.
struct TimeGrid {
  double t0 = 1.0;
  double dt = 0.01;
  std::size_t count = 1;

  double at(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
};

struct SimulationConfig {
  int d = 1;
  double alpha = -1.0;  ///< moments are taken in H^{alpha+1}
  int n_max = 8;
  TimeGrid time_grid{};
  double conv_dt = 1e-3;
  /// Memory horizon of the stochastic convolution. 0 picks the smallest
  /// passing horizon per mode; a positive value is used for every mode and
  /// must itself pass the tail test.
  double memory_horizon = 0.0;
  /// Tail test: int_T^inf r^2 <= tail_mass * int_0^inf r^2.
  double tail_mass = 1e-10;
  std::size_t n_paths = 100;
  std::uint64_t seed = 0;
  ZeroModePolicy zero_mode = ZeroModePolicy::Stationary;
  unsigned threads = 0;
};

inline constexpr std::uint32_t kSchemeConvolution = 1;
inline constexpr std::uint32_t kSchemeExactGaussian = 2;

std::string_view scheme_name(std::uint32_t scheme_id);

/// Mode coefficient paths. Slot 0 is X_0; member m of the index set has
/// X^1 in slot 1 + 2m and X^2 in slot 2 + 2m. Storage is (path, time, slot).
struct FieldEnsemble {
  SimulationConfig config;
  std::string kernel_id;
  std::string spectrum;
  IndexSet index_set;
  std::uint32_t scheme_id = kSchemeConvolution;
  std::size_t first_path = 0;  ///< global index of path 0 (batched runs)
  std::size_t n_paths = 0;
  std::size_t n_times = 0;
  std::size_t n_slots = 0;
  std::vector<double> data;
  /// Per-slot memory horizon used (0 for zero-coefficient modes and for the
  /// exact scheme).
  std::vector<double> memory_horizons;

  double at(std::size_t path, std::size_t time, std::size_t slot) const noexcept {
    return data[(path * n_times + time) * n_slots + slot];
  }
  std::span<const double> coefficients(std::size_t path, std::size_t time) const noexcept {
    return {data.data() + (path * n_times + time) * n_slots, n_slots};
  }
};

/// Validates the config against kernel and spectrum; throws InvalidArgument
/// on the first offending field.
void validate_config(const Kernel& kernel, const CovarianceSpectrum& spec,
                     const SimulationConfig& config);

/// rho(h) = int_0^inf r(s, -n_abs2) r(s+h, -n_abs2) ds for each lag.
std::vector<double> mode_autocovariance(const Kernel& kernel, double n_abs2,
                                        const std::vector<double>& lags);

/// Stochastic convolution with cell-averaged resolvent weights on the
/// conv_dt grid and one Gaussian increment stream per (path, slot).
FieldEnsemble simulate_convolution(const Kernel& kernel, const CovarianceSpectrum& spec,
                                   const SimulationConfig& config);

/// Paths [first, first + count) of the same ensemble; bit-identical to the
/// corresponding slice of simulate_convolution.
FieldEnsemble simulate_convolution_batch(const Kernel& kernel, const CovarianceSpectrum& spec,
                                         const SimulationConfig& config, std::size_t first,
                                         std::size_t count);

/// Exact joint Gaussian draws per mode from the covariance over the time
/// grid (Cholesky with diagonal jitter escalation). Requires at most 512 times.
FieldEnsemble simulate_exact_gaussian(const Kernel& kernel, const CovarianceSpectrum& spec,
                                      const SimulationConfig& config);

struct SecondMoment {
  double value = 0.0;
  double zero_mode = 0.0;
  /// True under the Brownian policy with gamma_0 > 0: the zero-mode term is
  /// gamma_0 t and `value` is evaluated at the `t` passed in.
  bool time_dependent = false;
};

/// E ||X(t)||^2 in H^{alpha+1}: zero-mode term plus
/// sum_{n in Z_s^d, |n|_inf <= n_max} 2 gamma_n (1+|n|^2)^{alpha+1} int_0^inf r^2.
SecondMoment analytic_second_moment(const Kernel& kernel, const CovarianceSpectrum& spec,
                                    double alpha, int n_max,
                                    ZeroModePolicy policy = ZeroModePolicy::Stationary,
                                    double t = 0.0);

/// Mean and standard error over paths of ||X(t_k)||^2 in H^{alpha+1}, one
/// entry per time point. Fourier coefficients are xi_0 = X_0 and
/// xi_n = (X^1_n - i X^2_n)/2.
std::vector<MeanSE> estimate_moment(const FieldEnsemble& ensemble, double alpha);

/// Squared H^{alpha+1} norm of one (path, time) coefficient vector.
double coefficient_norm2(const IndexSet& set, std::span<const double> coeffs, double alpha);

/// X(t, theta) = X_0 + sum_m cos(n_m . theta) X^1_m + sin(n_m . theta) X^2_m
/// at each point of `thetas` (flattened, d per point).
std::vector<double> evaluate_field(const FieldEnsemble& ensemble, std::span<const double> thetas,
                                   std::size_t path, std::size_t time);

/// Uniform per-axis grid of `per_axis` points on (-pi, pi], flattened.
std::vector<double> theta_grid(int d, std::size_t per_axis);

void write_field_csv(const std::filesystem::path& path, int d, std::span<const double> thetas,
                     std::span<const double> values);

/// Slot layout helpers.
inline std::size_t slot_cos(std::size_t member) { return 1 + 2 * member; }
inline std::size_t slot_sin(std::size_t member) { return 2 + 2 * member; }

}  // namespace vtorus
