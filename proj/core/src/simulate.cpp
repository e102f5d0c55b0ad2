#include "vtorus/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "parallel.hpp"
#include "vtorus/error.hpp"
#include "vtorus/io.hpp"
#include "vtorus/resolvent_function.hpp"
#include "vtorus/rng.hpp"

namespace vtorus {

std::string_view to_string(ZeroModePolicy p) {
  return p == ZeroModePolicy::Stationary ? "stationary" : "brownian";
}

ZeroModePolicy parse_zero_mode_policy(std::string_view s) {
  if (s == "stationary") return ZeroModePolicy::Stationary;
  if (s == "brownian") return ZeroModePolicy::Brownian;
  throw InvalidArgument("unknown zero-mode policy '" + std::string(s) +
                        "' (expected stationary or brownian)");
}

std::string_view scheme_name(std::uint32_t scheme_id) {
  switch (scheme_id) {
    case kSchemeConvolution: return "convolution";
    case kSchemeExactGaussian: return "exact-gaussian";
    default: return "unknown";
  }
}

namespace {

std::int64_t grid_steps(double t, double step, const char* what) {
  const double x = t / step;
  const double k = std::round(x);
  if (std::abs(x - k) > 1e-9 * std::max(1.0, std::abs(k))) {
    std::ostringstream msg;
    msg << what << "=" << t << " is not a multiple of conv_dt=" << step;
    throw InvalidArgument(msg.str());
  }
  return static_cast<std::int64_t>(k);
}

GridSource grid_source(double conv_dt, double n_abs2) {
  GridSource src;
  src.dt = conv_dt / 4.0;
  if (n_abs2 * src.dt > 0.25) src.dt = 0.25 / n_abs2;
  src.initial_horizon = std::min(8.0, 4096.0 * src.dt);
  return src;
}

ResolventFunction mode_resolvent(const Kernel& kernel, double n_abs2, double conv_dt) {
  return ResolventFunction::build(kernel, -n_abs2, grid_source(conv_dt, n_abs2));
}

double slot_amplitude(const CovarianceSpectrum& spec, const IndexSet& set, std::size_t slot) {
  if (slot == 0) return std::sqrt(spec.gamma(std::vector<int>(static_cast<std::size_t>(set.d), 0)));
  return std::sqrt(2.0 * spec.gamma(set[(slot - 1) / 2]));
}

double slot_norm2(const IndexSet& set, std::size_t slot) {
  return slot == 0 ? 0.0 : static_cast<double>(set.norm2((slot - 1) / 2));
}

struct ModePlan {
  double amplitude = 0.0;
  bool brownian = false;
  double horizon = 0.0;
  std::vector<double> reversed_weights;  ///< w_{J-1}, ..., w_0
};

std::vector<ModePlan> plan_convolution(const Kernel& kernel, const CovarianceSpectrum& spec,
                                       const SimulationConfig& cfg, const IndexSet& set) {
  const std::size_t slots = 1 + 2 * set.size();
  std::vector<ModePlan> plans(slots);
  // cos and sin slots share the resolvent; plan each member once
  std::vector<std::size_t> unique{0};
  for (std::size_t m = 0; m < set.size(); ++m) unique.push_back(slot_cos(m));
  detail::parallel_for(unique.size(), cfg.threads, [&](std::size_t u) {
    const std::size_t slot = unique[u];
    ModePlan p;
    p.amplitude = slot_amplitude(spec, set, slot);
    if (p.amplitude > 0.0) {
      if (slot == 0 && cfg.zero_mode == ZeroModePolicy::Brownian) {
        p.brownian = true;
      } else {
        if (slot == 0 && !kernel.integrable()) {
          throw AssumptionViolation("stationary zero mode needs an integrable kernel; kernel '" +
                                    kernel.id() + "' is not (use the brownian policy)");
        }
        const double m = slot_norm2(set, slot);
        const auto r = mode_resolvent(kernel, m, cfg.conv_dt);
        const double need = tail_horizon(r, cfg.tail_mass, cfg.conv_dt);
        if (cfg.memory_horizon > 0.0) {
          if (need > cfg.memory_horizon * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "memory_horizon=" << cfg.memory_horizon << " leaves more than " << cfg.tail_mass
                << " of the resolvent mass at |n|^2=" << m << "; need at least " << need;
            throw InvalidArgument(msg.str());
          }
          p.horizon = cfg.memory_horizon;
        } else {
          p.horizon = need;
        }
        const auto cells = static_cast<std::size_t>(std::llround(p.horizon / cfg.conv_dt));
        auto w = cell_averages(r, cfg.conv_dt, std::max<std::size_t>(cells, 1));
        std::reverse(w.begin(), w.end());
        p.reversed_weights = std::move(w);
      }
    }
    plans[slot] = p;
    if (slot != 0) plans[slot + 1] = std::move(p);
  });
  return plans;
}

FieldEnsemble empty_ensemble(const Kernel& kernel, const CovarianceSpectrum& spec,
                             const SimulationConfig& cfg, std::uint32_t scheme,
                             std::size_t first, std::size_t count) {
  FieldEnsemble e;
  e.config = cfg;
  e.kernel_id = kernel.id();
  e.spectrum = spec.describe();
  e.index_set = build_index_set(cfg.d, cfg.n_max);
  e.scheme_id = scheme;
  e.first_path = first;
  e.n_paths = count;
  e.n_times = cfg.time_grid.count;
  e.n_slots = 1 + 2 * e.index_set.size();
  e.data.assign(e.n_paths * e.n_times * e.n_slots, 0.0);
  e.memory_horizons.assign(e.n_slots, 0.0);
  return e;
}

inline double dot4(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 3 < n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

void check_path_range(std::size_t first, std::size_t count, const SimulationConfig& cfg) {
  if (first + count > cfg.n_paths) throw InvalidArgument("path batch exceeds n_paths");
  if (cfg.n_paths > 0xFFFFFFFFull) throw InvalidArgument("n_paths must fit in 32 bits");
}

}  // namespace

void validate_config(const Kernel& kernel, const CovarianceSpectrum& spec,
                     const SimulationConfig& cfg) {
  if (cfg.d < 1) throw InvalidArgument("d must be >= 1");
  if (cfg.d != spec.d()) {
    throw InvalidArgument("d=" + std::to_string(cfg.d) + " does not match the spectrum dimension " +
                          std::to_string(spec.d()));
  }
  if (cfg.n_max < 0) throw InvalidArgument("n_max must be >= 0");
  if (cfg.time_grid.count < 1) throw InvalidArgument("time grid needs at least one point");
  if (!(cfg.conv_dt > 0.0)) throw InvalidArgument("conv_dt must be > 0");
  if (cfg.time_grid.count > 1) {
    if (!(cfg.time_grid.dt > 0.0)) throw InvalidArgument("time grid spacing must be > 0");
    if (cfg.conv_dt > cfg.time_grid.dt * (1.0 + 1e-12)) {
      throw InvalidArgument("conv_dt must not exceed the time grid spacing");
    }
    grid_steps(cfg.time_grid.dt, cfg.conv_dt, "time grid spacing");
  }
  grid_steps(cfg.time_grid.t0, cfg.conv_dt, "t0");
  if (cfg.zero_mode == ZeroModePolicy::Brownian && cfg.time_grid.t0 < 0.0) {
    throw InvalidArgument("t0 must be >= 0 under the brownian zero-mode policy");
  }
  if (!(cfg.tail_mass > 0.0 && cfg.tail_mass < 1.0)) {
    throw InvalidArgument("tail_mass must lie in (0, 1)");
  }
  if (cfg.memory_horizon < 0.0) throw InvalidArgument("memory_horizon must be >= 0");
  if (cfg.n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
  const auto v = validate_spectrum(spec);
  if (!v.valid) throw InvalidArgument("invalid spectrum: " + v.violations.front().message);
  (void)kernel;
}

std::vector<double> mode_autocovariance(const Kernel& kernel, double n_abs2,
                                        const std::vector<double>& lags) {
  if (!kernel.integrable()) {
    throw AssumptionViolation("mode autocovariance needs an integrable kernel; '" + kernel.id() +
                              "' is not");
  }
  if (!(n_abs2 >= 0.0)) throw InvalidArgument("mode_autocovariance: |n|^2 must be >= 0");
  const auto r = mode_resolvent(kernel, n_abs2, 1e-3);
  std::vector<double> out;
  out.reserve(lags.size());
  for (double h : lags) out.push_back(autocovariance(r, h).value);
  return out;
}

FieldEnsemble simulate_convolution_batch(const Kernel& kernel, const CovarianceSpectrum& spec,
                                         const SimulationConfig& cfg, std::size_t first,
                                         std::size_t count) {
  validate_config(kernel, spec, cfg);
  check_path_range(first, count, cfg);
  auto e = empty_ensemble(kernel, spec, cfg, kSchemeConvolution, first, count);
  const auto plans = plan_convolution(kernel, spec, cfg, e.index_set);
  for (std::size_t s = 0; s < e.n_slots; ++s) e.memory_horizons[s] = plans[s].horizon;

  const std::size_t K = e.n_times;
  std::vector<std::int64_t> steps(K);
  for (std::size_t k = 0; k < K; ++k) {
    steps[k] = grid_steps(cfg.time_grid.at(k), cfg.conv_dt, "time point");
  }
  const double sqdt = std::sqrt(cfg.conv_dt);

  detail::parallel_for(count, cfg.threads, [&](std::size_t p) {
    const auto path = static_cast<std::uint32_t>(first + p);
    std::vector<double> buf;
    for (std::size_t slot = 0; slot < e.n_slots; ++slot) {
      const auto& plan = plans[slot];
      if (plan.amplitude == 0.0) continue;
      const NormalStream noise(cfg.seed, kSchemeConvolution, path, static_cast<std::uint32_t>(slot));
      const double scale = plan.amplitude * sqdt;
      double* out = e.data.data() + p * K * e.n_slots + slot;
      if (plan.brownian) {
        // beta_0(t_k) = sqrt(dt) sum_{s=0}^{s_k-1} xi[s]
        buf.resize(static_cast<std::size_t>(steps[K - 1]));
        noise.fill(0, buf);
        double acc = 0.0;
        std::int64_t done = 0;
        for (std::size_t k = 0; k < K; ++k) {
          for (; done < steps[k]; ++done) acc += buf[static_cast<std::size_t>(done)];
          out[k * e.n_slots] = scale * acc;
        }
        continue;
      }
      const auto J = static_cast<std::int64_t>(plan.reversed_weights.size());
      const std::int64_t lo = steps[0] - J;
      buf.resize(static_cast<std::size_t>(steps[K - 1] - lo));
      noise.fill(lo, buf);
      for (std::size_t k = 0; k < K; ++k) {
        const double* xi = buf.data() + (steps[k] - J - lo);
        out[k * e.n_slots] =
            scale * dot4(plan.reversed_weights.data(), xi, static_cast<std::size_t>(J));
      }
    }
  });
  for (double v : e.data) {
    if (!std::isfinite(v)) throw NumericalFailure("simulate_convolution produced a non-finite value");
  }
  return e;
}

FieldEnsemble simulate_convolution(const Kernel& kernel, const CovarianceSpectrum& spec,
                                   const SimulationConfig& config) {
  return simulate_convolution_batch(kernel, spec, config, 0, config.n_paths);
}

FieldEnsemble simulate_exact_gaussian(const Kernel& kernel, const CovarianceSpectrum& spec,
                                      const SimulationConfig& cfg) {
  validate_config(kernel, spec, cfg);
  check_path_range(0, cfg.n_paths, cfg);
  const std::size_t K = cfg.time_grid.count;
  if (K > 512) throw InvalidArgument("exact Gaussian scheme supports at most 512 time points");
  auto e = empty_ensemble(kernel, spec, cfg, kSchemeExactGaussian, 0, cfg.n_paths);

  // Lower Cholesky factor per slot (shared by the cos/sin pair).
  std::vector<Eigen::MatrixXd> factors(e.n_slots);
  std::vector<std::size_t> unique{0};
  for (std::size_t m = 0; m < e.index_set.size(); ++m) unique.push_back(slot_cos(m));
  detail::parallel_for(unique.size(), cfg.threads, [&](std::size_t u) {
    const std::size_t slot = unique[u];
    const double a = slot_amplitude(spec, e.index_set, slot);
    if (a == 0.0) return;
    Eigen::MatrixXd cov(K, K);
    if (slot == 0 && cfg.zero_mode == ZeroModePolicy::Brownian) {
      for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) {
          cov(i, j) = a * a * std::min(cfg.time_grid.at(i), cfg.time_grid.at(j));
        }
      }
    } else {
      if (slot == 0 && !kernel.integrable()) {
        throw AssumptionViolation("stationary zero mode needs an integrable kernel; kernel '" +
                                  kernel.id() + "' is not (use the brownian policy)");
      }
      const auto r = mode_resolvent(kernel, slot_norm2(e.index_set, slot), cfg.conv_dt);
      std::vector<double> rho(K);
      for (std::size_t l = 0; l < K; ++l) {
        rho[l] = a * a * autocovariance(r, static_cast<double>(l) * cfg.time_grid.dt).value;
      }
      for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) cov(i, j) = rho[i > j ? i - j : j - i];
      }
    }
    const double diag = cov.diagonal().maxCoeff();
    double jitter = 0.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::MatrixXd c = cov;
      if (jitter > 0.0) c.diagonal().array() += jitter;
      Eigen::LLT<Eigen::MatrixXd> llt(c);
      if (llt.info() == Eigen::Success) {
        factors[slot] = llt.matrixL();
        if (slot != 0) factors[slot + 1] = factors[slot];
        return;
      }
      jitter = jitter == 0.0 ? 1e-12 * std::max(diag, 1e-300) : jitter * 10.0;
    }
    std::ostringstream msg;
    msg << "covariance factorization failed for slot " << slot << " after jitter up to " << jitter;
    throw NumericalFailure(msg.str());
  });

  detail::parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t p) {
    Eigen::VectorXd z(K);
    std::vector<double> zbuf(K);
    for (std::size_t slot = 0; slot < e.n_slots; ++slot) {
      if (factors[slot].size() == 0) continue;
      NormalStream(cfg.seed, kSchemeExactGaussian, static_cast<std::uint32_t>(p),
                   static_cast<std::uint32_t>(slot))
          .fill(0, zbuf);
      for (std::size_t i = 0; i < K; ++i) z(static_cast<Eigen::Index>(i)) = zbuf[i];
      const Eigen::VectorXd x = factors[slot].triangularView<Eigen::Lower>() * z;
      for (std::size_t k = 0; k < K; ++k) {
        e.data[(p * K + k) * e.n_slots + slot] = x(static_cast<Eigen::Index>(k));
      }
    }
  });
  return e;
}

SecondMoment analytic_second_moment(const Kernel& kernel, const CovarianceSpectrum& spec,
                                    double alpha, int n_max, ZeroModePolicy policy, double t) {
  if (!kernel.integrable()) {
    throw AssumptionViolation("second moment needs an integrable kernel; '" + kernel.id() +
                              "' is not");
  }
  const auto set = build_index_set(spec.d(), n_max);
  SecondMoment out;
  const double g0 = spec.gamma(std::vector<int>(static_cast<std::size_t>(spec.d()), 0));
  if (g0 > 0.0) {
    if (policy == ZeroModePolicy::Brownian) {
      out.zero_mode = g0 * t;
      out.time_dependent = true;
    } else {
      out.zero_mode = g0 * integral_r2(mode_resolvent(kernel, 0.0, 1e-3)).value;
    }
  }
  std::map<long, double> r2;
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double g = spec.gamma(set[i]);
    if (g == 0.0) continue;
    const long m = set.norm2(i);
    auto it = r2.find(m);
    if (it == r2.end()) {
      it = r2.emplace(m, integral_r2(mode_resolvent(kernel, static_cast<double>(m), 1e-3)).value)
               .first;
    }
    acc += 2.0 * g * std::pow(1.0 + static_cast<double>(m), alpha + 1.0) * it->second;
  }
  out.value = out.zero_mode + acc;
  return out;
}

double coefficient_norm2(const IndexSet& set, std::span<const double> c, double alpha) {
  if (c.size() != 1 + 2 * set.size()) throw InvalidArgument("coefficient vector size mismatch");
  double acc = 0.0;
  for (std::size_t m = 0; m < set.size(); ++m) {
    const double w = std::pow(1.0 + static_cast<double>(set.norm2(m)), alpha + 1.0);
    acc += w * (c[slot_cos(m)] * c[slot_cos(m)] + c[slot_sin(m)] * c[slot_sin(m)]);
  }
  return c[0] * c[0] + 0.5 * acc;
}

std::vector<MeanSE> estimate_moment(const FieldEnsemble& e, double alpha) {
  if (e.n_paths == 0) throw InvalidArgument("estimate_moment: empty ensemble");
  std::vector<double> w(e.index_set.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] = std::pow(1.0 + static_cast<double>(e.index_set.norm2(m)), alpha + 1.0);
  }
  std::vector<MeanSE> out(e.n_times);
  std::vector<double> vals(e.n_paths);
  for (std::size_t k = 0; k < e.n_times; ++k) {
    for (std::size_t p = 0; p < e.n_paths; ++p) {
      const auto c = e.coefficients(p, k);
      double acc = 0.0;
      for (std::size_t m = 0; m < w.size(); ++m) {
        acc += w[m] * (c[slot_cos(m)] * c[slot_cos(m)] + c[slot_sin(m)] * c[slot_sin(m)]);
      }
      vals[p] = c[0] * c[0] + 0.5 * acc;
    }
    out[k] = mean_se(vals);
  }
  return out;
}

std::vector<double> evaluate_field(const FieldEnsemble& e, std::span<const double> thetas,
                                   std::size_t path, std::size_t time) {
  if (path >= e.n_paths) throw InvalidArgument("evaluate_field: path index out of range");
  if (time >= e.n_times) throw InvalidArgument("evaluate_field: time index out of range");
  const auto d = static_cast<std::size_t>(e.index_set.d);
  if (thetas.size() % d != 0) throw InvalidArgument("evaluate_field: theta array not a multiple of d");
  const auto c = e.coefficients(path, time);
  std::vector<double> out(thetas.size() / d);
  for (std::size_t q = 0; q < out.size(); ++q) {
    double v = c[0];
    for (std::size_t m = 0; m < e.index_set.size(); ++m) {
      const auto n = e.index_set[m];
      double phase = 0.0;
      for (std::size_t k = 0; k < d; ++k) phase += n[k] * thetas[q * d + k];
      v += std::cos(phase) * c[slot_cos(m)] + std::sin(phase) * c[slot_sin(m)];
    }
    out[q] = v;
  }
  return out;
}

std::vector<double> theta_grid(int d, std::size_t per_axis) {
  if (d < 1 || per_axis < 1) throw InvalidArgument("theta_grid: need d >= 1 and points >= 1");
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= per_axis;
  std::vector<double> out;
  out.reserve(total * static_cast<std::size_t>(d));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(per_axis);
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::size_t rem = lin;
    std::vector<double> pt(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
      pt[static_cast<std::size_t>(k)] =
          -std::numbers::pi + static_cast<double>(rem % per_axis + 1) * step;
      rem /= per_axis;
    }
    out.insert(out.end(), pt.begin(), pt.end());
  }
  return out;
}

void write_field_csv(const std::filesystem::path& path, int d, std::span<const double> thetas,
                     std::span<const double> values) {
  const auto dd = static_cast<std::size_t>(d);
  if (thetas.size() != values.size() * dd) throw InvalidArgument("field CSV: size mismatch");
  std::vector<std::string> header;
  for (int k = 1; k <= d; ++k) header.push_back("theta_" + std::to_string(k));
  header.push_back("value");
  std::vector<std::vector<double>> rows(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows[i].assign(thetas.begin() + static_cast<long>(i * dd),
                   thetas.begin() + static_cast<long>((i + 1) * dd));
    rows[i].push_back(values[i]);
  }
  write_csv(path, header, rows);
}

}  // namespace vtorus
