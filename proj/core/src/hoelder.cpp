#include "vtorus/hoelder.hpp"

#include <cmath>
#include <map>
#include <set>

#include "vtorus/error.hpp"
#include "vtorus/resolvent_function.hpp"

namespace vtorus {

namespace {

// rho(0) - rho(h) = (int_0^h r^2 + int_0^inf (r(u+h) - r(u))^2) / 2, which
// avoids the cancellation of the direct difference at small h.
double rho_drop(const ResolventFunction& r, double h) {
  if (h == 0.0) return 0.0;
  return 0.5 * (integral_r2_upto(r, h).value + increment_energy(r, h).value);
}

ResolventFunction increment_resolvent(const Kernel& kernel, double m) {
  GridSource src;
  src.dt = std::min(2.5e-4, 0.25 / std::max(m, 1.0));
  src.initial_horizon = std::min(8.0, 4096.0 * src.dt);
  return ResolventFunction::build(kernel, -m, src);
}

void require_convergent(const CovarianceSpectrum& spec) {
  if (spec.form() == SpectrumForm::Tabulated) return;
  if (!parametric_regularity_decision(spec.d(), -1.0, spec.beta())) {
    throw AssumptionViolation("Hoelder estimate needs sum gamma_n/(1+|n|^2) < inf; " +
                              spec.describe() + " in d=" + std::to_string(spec.d()) +
                              " violates it");
  }
}

}  // namespace

std::vector<double> dyadic_lags(int lo_exp, int hi_exp) {
  if (lo_exp > hi_exp) throw InvalidArgument("dyadic_lags: lo_exp > hi_exp");
  std::vector<double> out;
  for (int k = lo_exp; k <= hi_exp; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

double analytic_increment(const Kernel& kernel, const CovarianceSpectrum& spec, int n_max,
                          ZeroModePolicy policy, double h) {
  if (!(h >= 0.0)) throw InvalidArgument("analytic_increment: lag must be >= 0");
  if (h == 0.0) return 0.0;
  if (!kernel.integrable()) {
    throw AssumptionViolation("increment series needs an integrable kernel; '" + kernel.id() +
                              "' is not");
  }
  const auto set = build_index_set(spec.d(), n_max);
  double total = 0.0;
  const double g0 = spec.gamma(std::vector<int>(static_cast<std::size_t>(spec.d()), 0));
  if (g0 > 0.0) {
    total += policy == ZeroModePolicy::Brownian ? g0 * h
                                                : 2.0 * g0 * rho_drop(increment_resolvent(kernel, 0.0), h);
  }
  std::map<long, double> drops;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double g = spec.gamma(set[i]);
    if (g == 0.0) continue;
    const long m = set.norm2(i);
    auto it = drops.find(m);
    if (it == drops.end()) {
      it = drops.emplace(m, rho_drop(increment_resolvent(kernel, static_cast<double>(m)), h)).first;
    }
    total += 4.0 * g * it->second;
  }
  return total;
}

HoelderResult estimate_hoelder(const Kernel& kernel, const CovarianceSpectrum& spec,
                               const SimulationConfig& cfg, const HoelderOptions& opts) {
  require_convergent(spec);
  const auto& lags = opts.lags;
  std::set<int> scales;
  for (double h : lags) {
    if (!(h > 0.0)) throw InvalidArgument("Hoelder lags must be > 0");
    scales.insert(static_cast<int>(std::floor(std::log2(h))));
  }
  if (scales.size() < 4) throw InvalidArgument("Hoelder lag ladder must span at least four dyadic scales");

  HoelderResult res;
  std::vector<double> lx, ly;
  for (double h : lags) {
    HoelderPoint p;
    p.h = h;
    p.analytic = analytic_increment(kernel, spec, cfg.n_max, cfg.zero_mode, h);
    res.points.push_back(p);
    lx.push_back(std::log(h));
    ly.push_back(std::log(p.analytic));
  }
  res.analytic_fit = linear_fit(lx, ly);
  res.delta_analytic = res.analytic_fit.slope;
  res.eta_analytic = 0.5 * res.delta_analytic;
  res.band_lo = res.analytic_fit.band_lo;
  res.band_hi = res.analytic_fit.band_hi;
  if (!opts.monte_carlo) return res;

  validate_config(kernel, spec, cfg);
  const double dt = cfg.time_grid.dt;
  const std::size_t K = cfg.time_grid.count;
  std::vector<std::size_t> steps;
  for (double h : lags) {
    const double x = h / dt;
    if (std::abs(x - std::round(x)) > 1e-9 * std::max(1.0, x)) {
      throw InvalidArgument("Hoelder lag " + std::to_string(h) +
                            " is not a multiple of the time grid spacing");
    }
    const auto L = static_cast<std::size_t>(std::llround(x));
    if (L + 1 > K) throw InvalidArgument("Hoelder lag exceeds the simulated time span");
    steps.push_back(L);
  }

  // y[p * n_lags + l]: per-path mean squared increment at lag l
  const std::size_t nl = lags.size();
  std::vector<double> y(cfg.n_paths * nl, 0.0);
  const std::size_t batch = std::max<std::size_t>(opts.batch, 1);
  for (std::size_t first = 0; first < cfg.n_paths; first += batch) {
    const std::size_t count = std::min(batch, cfg.n_paths - first);
    const auto e = simulate_convolution_batch(kernel, spec, cfg, first, count);
    for (std::size_t p = 0; p < count; ++p) {
      for (std::size_t l = 0; l < nl; ++l) {
        const std::size_t L = steps[l];
        double acc = 0.0;
        for (std::size_t k = 0; k + L < K; ++k) {
          const auto a = e.coefficients(p, k);
          const auto b = e.coefficients(p, k + L);
          double s = (b[0] - a[0]) * (b[0] - a[0]);
          double modes = 0.0;
          for (std::size_t j = 1; j < e.n_slots; ++j) modes += (b[j] - a[j]) * (b[j] - a[j]);
          acc += s + 0.5 * modes;
        }
        y[(first + p) * nl + l] = acc / static_cast<double>(K - L);
      }
    }
  }

  const double n = static_cast<double>(cfg.n_paths);
  std::vector<double> mean(nl, 0.0);
  for (std::size_t p = 0; p < cfg.n_paths; ++p) {
    for (std::size_t l = 0; l < nl; ++l) mean[l] += y[p * nl + l];
  }
  for (auto& m : mean) m /= n;
  std::vector<double> cov(nl * nl, 0.0);
  for (std::size_t p = 0; p < cfg.n_paths; ++p) {
    for (std::size_t a = 0; a < nl; ++a) {
      for (std::size_t b = 0; b < nl; ++b) {
        cov[a * nl + b] += (y[p * nl + a] - mean[a]) * (y[p * nl + b] - mean[b]);
      }
    }
  }
  for (auto& c : cov) c /= std::max(n - 1.0, 1.0) * n;  // covariance of the means

  std::vector<double> my;
  for (std::size_t l = 0; l < nl; ++l) {
    res.points[l].mc_mean = mean[l];
    res.points[l].mc_se = std::sqrt(cov[l * nl + l]);
    res.points[l].pairs = K - steps[l];
    if (!(mean[l] > 0.0)) throw NumericalFailure("Monte Carlo increment is not positive");
    my.push_back(std::log(mean[l]));
  }
  const auto mc_fit = linear_fit(lx, my);
  // delta method: slope = sum c_l log m_l, c_l = (x_l - xbar)/Sxx
  double xbar = 0.0;
  for (double v : lx) xbar += v;
  xbar /= static_cast<double>(nl);
  double sxx = 0.0;
  for (double v : lx) sxx += (v - xbar) * (v - xbar);
  double var = 0.0;
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nl; ++b) {
      const double ca = (lx[a] - xbar) / sxx, cb = (lx[b] - xbar) / sxx;
      var += ca * cb * cov[a * nl + b] / (mean[a] * mean[b]);
    }
  }
  res.has_mc = true;
  res.delta_mc = mc_fit.slope;
  res.delta_mc_se = std::sqrt(std::max(var, 0.0));
  res.eta_mc = 0.5 * res.delta_mc;
  const double half = 1.96 * std::hypot(res.analytic_fit.slope_se, res.delta_mc_se);
  res.band_lo = res.delta_analytic - half;
  res.band_hi = res.delta_analytic + half;
  res.mc_within_band = res.delta_mc >= res.band_lo && res.delta_mc <= res.band_hi;
  return res;
}

}  // namespace vtorus
