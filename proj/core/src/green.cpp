#include "vtorus/green.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "parallel.hpp"
#include "series.hpp"
#include "vtorus/error.hpp"

namespace vtorus {

namespace {

constexpr double kPi = std::numbers::pi;

double scale_c(GdNormalization n) { return n == GdNormalization::AsPrinted ? 1.0 : 4.0; }

double prefactor(int d) { return std::pow(4.0 * kPi, -0.5 * d); }

// Integrand in u = ln t, in log form.
double log_integrand(double nu, double b, double u) { return nu * u - std::exp(u) - b * std::exp(-u); }

double term_quadrature(int d, double b, double rel_tol, double* err) {
  const double nu = 1.0 - 0.5 * d;
  const double y = 0.5 * (nu + std::sqrt(nu * nu + 4.0 * b));
  if (!(y > 0.0)) throw InvalidArgument("G_d term diverges at zero distance for d >= 2");
  const double u0 = std::log(y);
  const double peak = log_integrand(nu, b, u0);
  double lo = u0, hi = u0;
  while (log_integrand(nu, b, lo) > peak - 50.0) lo -= 0.5;
  while (log_integrand(nu, b, hi) > peak - 50.0) hi += 0.5;

  auto f = [&](double u) { return std::exp(log_integrand(nu, b, u)); };
  double h = 0.5;
  int count = static_cast<int>(std::round((hi - lo) / h));
  double sum = 0.0;
  for (int i = 0; i <= count; ++i) sum += f(lo + i * h);
  double prev = sum * h;
  for (int level = 0; level < 14; ++level) {
    double mid = 0.0;
    for (int i = 0; i < count; ++i) mid += f(lo + (i + 0.5) * h);
    sum += mid;
    h *= 0.5;
    count *= 2;
    const double cur = sum * h;
    const double diff = std::abs(cur - prev);
    if (level >= 2 && diff <= rel_tol * std::abs(cur)) {
      if (err) *err = diff;
      return cur;
    }
    prev = cur;
  }
  throw NumericalFailure("G_d term quadrature did not converge");
}

double term_bessel(int d, double b) {
  const double nu = 1.0 - 0.5 * d;
  if (b == 0.0) {
    if (nu <= 0.0) throw InvalidArgument("G_d term diverges at zero distance for d >= 2");
    return std::tgamma(nu);
  }
  const double z = 2.0 * std::sqrt(b);
  if (z > 1400.0) return 0.0;
  return 2.0 * std::pow(b, 0.5 * nu) * std::cyl_bessel_k(std::abs(nu), z);
}

void check_point(int d, std::span<const double> x) {
  if (d < 1) throw InvalidArgument("G_d: d must be >= 1");
  if (static_cast<int>(x.size()) != d) throw InvalidArgument("G_d: point has wrong dimension");
  bool origin = true;
  for (double v : x) {
    if (!(v > -kPi - 1e-15 && v <= kPi + 1e-15)) {
      throw InvalidArgument("G_d: point outside (-pi, pi]^d");
    }
    if (v != 0.0) origin = false;
  }
  if (origin && d >= 2) throw InvalidArgument("G_d: x = 0 is a singular point for d >= 2");
}

GdValue lattice_sum(int d, std::span<const double> x, const GdOptions& opts) {
  const int L = opts.lattice_cut;
  if (L < 0) throw InvalidArgument("G_d: lattice_cut must be >= 0");
  std::vector<double> shells(static_cast<std::size_t>(L) + 1, 0.0);
  std::vector<int> n(static_cast<std::size_t>(d), -L);
  double quad_err = 0.0;
  for (;;) {
    double rho2 = 0.0;
    int sup = 0;
    for (int k = 0; k < d; ++k) {
      const double v = x[static_cast<std::size_t>(k)] + 2.0 * kPi * n[static_cast<std::size_t>(k)];
      rho2 += v * v;
      sup = std::max(sup, std::abs(n[static_cast<std::size_t>(k)]));
    }
    double e = 0.0;
    shells[static_cast<std::size_t>(sup)] +=
        gd_term(d, rho2, opts.normalization, opts.method, opts.rel_tol, &e);
    quad_err += e;
    int pos = d - 1;
    while (pos >= 0 && n[static_cast<std::size_t>(pos)] == L) {
      n[static_cast<std::size_t>(pos)] = -L;
      --pos;
    }
    if (pos < 0) break;
    ++n[static_cast<std::size_t>(pos)];
  }
  GdValue out;
  for (double s : shells) out.value += s;
  out.lattice_error = L > 0 ? std::abs(shells.back()) : out.value;
  out.quad_error = quad_err;
  out.error = out.lattice_error + out.quad_error;
  return out;
}

}  // namespace

std::string_view to_string(GdNormalization n) {
  return n == GdNormalization::AsPrinted ? "as-printed" : "standard-heat";
}

GdNormalization parse_normalization(std::string_view s) {
  if (s == "as-printed" || s == "printed") return GdNormalization::AsPrinted;
  if (s == "standard-heat" || s == "standard" || s == "heat") return GdNormalization::StandardHeat;
  throw InvalidArgument("unknown G_d normalization '" + std::string(s) +
                        "' (expected as-printed or standard-heat)");
}

double gd_term(int d, double rho2, GdNormalization norm, GdMethod method, double rel_tol,
               double* quad_error) {
  const double b = rho2 / scale_c(norm);
  if (quad_error) *quad_error = 0.0;
  double v;
  if (method == GdMethod::Bessel) {
    v = term_bessel(d, b);
  } else {
    double e = 0.0;
    v = term_quadrature(d, b, rel_tol, &e);
    if (quad_error) *quad_error = prefactor(d) * e;
  }
  return prefactor(d) * v;
}

GdValue eval_Gd(int d, std::span<const double> x, const GdOptions& opts) {
  check_point(d, x);
  return lattice_sum(d, x, opts);
}

double gd_total_mass(int d, GdNormalization norm) { return gd_fourier(d, 0, norm); }

double gd_fourier(int d, long n_abs2, GdNormalization norm) {
  const double c = scale_c(norm);
  return std::pow(0.25 * c, 0.5 * d) / (1.0 + 0.25 * c * static_cast<double>(n_abs2));
}

namespace {

struct FftwGrid {
  FftwGrid(int d, int m) : d(d), m(m) {
    total = 1;
    for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(m);
    half = total / static_cast<std::size_t>(m) * static_cast<std::size_t>(m / 2 + 1);
    in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
    out = static_cast<double*>(fftw_malloc(sizeof(double) * total));
    if (!in || !out) throw NumericalFailure("fftw_malloc failed");
    std::vector<int> dims(static_cast<std::size_t>(d), m);
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_c2r(d, dims.data(), in, out, FFTW_ESTIMATE);
  }
  ~FftwGrid() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  FftwGrid(const FftwGrid&) = delete;
  FftwGrid& operator=(const FftwGrid&) = delete;

  int d, m;
  std::size_t total = 0, half = 0;
  fftw_complex* in = nullptr;
  double* out = nullptr;
  fftw_plan plan = nullptr;
};

// Gamma_N on the cell-centred grid theta_j = -pi + (j + 1/2) 2pi/M, and its
// value at the origin.
std::vector<double> fejer_partial_sum(const CovarianceSpectrum& spec, int N, int M,
                                      double& at_origin) {
  const int d = spec.d();
  FftwGrid g(d, M);
  for (std::size_t i = 0; i < g.half; ++i) g.in[i][0] = g.in[i][1] = 0.0;
  const double shift = -kPi + kPi / M;
  const int last = M / 2 + 1;
  at_origin = 0.0;
  std::vector<int> n(static_cast<std::size_t>(d), -N);
  n.back() = 0;
  for (;;) {
    double weight = 1.0, phase = 0.0;
    std::size_t idx = 0;
    for (int k = 0; k < d; ++k) {
      const int v = n[static_cast<std::size_t>(k)];
      weight *= 1.0 - std::abs(v) / static_cast<double>(N + 1);
      phase += v * shift;
      const int wrapped = ((v % M) + M) % M;
      idx = k + 1 < d ? idx * static_cast<std::size_t>(M) + static_cast<std::size_t>(wrapped)
                      : idx * static_cast<std::size_t>(last) + static_cast<std::size_t>(wrapped);
    }
    const double coef = weight * spec.gamma(n);
    g.in[idx][0] = coef * std::cos(phase);
    g.in[idx][1] = coef * std::sin(phase);
    at_origin += n.back() == 0 ? coef : 2.0 * coef;
    int pos = d - 1;
    while (pos >= 0 && n[static_cast<std::size_t>(pos)] == N) {
      n[static_cast<std::size_t>(pos)] = pos == d - 1 ? 0 : -N;
      --pos;
    }
    if (pos < 0) break;
    ++n[static_cast<std::size_t>(pos)];
  }
  fftw_execute(g.plan);
  return std::vector<double>(g.out, g.out + g.total);
}

// G_d on the same grid. The grid is symmetric under sign flips and
// coordinate permutations, so values are computed once per sorted tuple of
// folded indices.
std::vector<double> green_on_grid(int d, int M, const PairingOptions& opts) {
  const int F = M / 2;
  const double step = 2.0 * kPi / M;
  std::size_t dense = 1;
  for (int k = 0; k < d; ++k) dense *= static_cast<std::size_t>(F);

  std::vector<std::vector<int>> tuples;
  std::vector<int> t(static_cast<std::size_t>(d), 0);
  for (;;) {
    tuples.push_back(t);
    int pos = d - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == F - 1) --pos;
    if (pos < 0) break;
    const int v = ++t[static_cast<std::size_t>(pos)];
    for (int k = pos + 1; k < d; ++k) t[static_cast<std::size_t>(k)] = v;
  }
  auto key = [&](const std::vector<int>& s) {
    std::size_t idx = 0;
    for (int v : s) idx = idx * static_cast<std::size_t>(F) + static_cast<std::size_t>(v);
    return idx;
  };
  GdOptions go;
  go.lattice_cut = opts.lattice_cut;
  go.normalization = opts.normalization;
  go.method = GdMethod::Bessel;
  std::vector<double> cache(dense, 0.0);
  detail::parallel_for(tuples.size(), opts.threads, [&](std::size_t i) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      x[static_cast<std::size_t>(k)] = (F - tuples[i][static_cast<std::size_t>(k)] - 0.5) * step;
    }
    cache[key(tuples[i])] = lattice_sum(d, x, go).value;
  });

  std::size_t total = dense;
  for (int k = 0; k < d; ++k) total *= 2;
  std::vector<double> grid(total);
  std::vector<int> j(static_cast<std::size_t>(d), 0), folded(static_cast<std::size_t>(d));
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::size_t rem = lin;
    for (int k = d - 1; k >= 0; --k) {
      j[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(M));
      rem /= static_cast<std::size_t>(M);
    }
    // theta_j = (j - F + 1/2) step; |theta| = (F - f - 1/2) step with f the folded index
    for (int k = 0; k < d; ++k) {
      const int v = j[static_cast<std::size_t>(k)];
      folded[static_cast<std::size_t>(k)] = v < F ? v : M - 1 - v;
    }
    std::sort(folded.begin(), folded.end());
    grid[lin] = cache[key(folded)];
  }
  return grid;
}

}  // namespace

PairingResult pairing_gamma_Gd(const CovarianceSpectrum& spec, const PairingOptions& opts) {
  const int d = spec.d();
  PairingResult res;
  res.truncations = opts.truncations;
  if (res.truncations.empty()) res.truncations = dyadic_truncations(d == 1 ? 9 : d == 2 ? 4 : 3);
  if (res.truncations.size() < 3) throw InvalidArgument("pairing: need at least three truncations");
  for (std::size_t i = 0; i < res.truncations.size(); ++i) {
    if (res.truncations[i] < 1 || (i > 0 && res.truncations[i] <= res.truncations[i - 1])) {
      throw InvalidArgument("pairing: truncations must be positive and increasing");
    }
  }
  if (opts.grid_factor < 3) throw InvalidArgument("pairing: grid_factor must be >= 3");

  for (int N : res.truncations) {
    int M = opts.grid_factor * (N + 1);
    M += M % 2;
    double origin = 0.0;
    const auto gamma = fejer_partial_sum(spec, N, M, origin);
    const auto green = green_on_grid(d, M, opts);
    double lo = gamma[0], hi = std::abs(gamma[0]);
    for (double v : gamma) {
      lo = std::min(lo, v);
      hi = std::max(hi, std::abs(v));
    }
    if (lo < -opts.negativity_tol * std::max(hi, 1e-300)) {
      std::ostringstream msg;
      msg << "pairing: partial sum Gamma_N (N=" << N << ") reaches " << lo
          << " on the grid; the covariance is not a nonnegative measure";
      throw AssumptionViolation(msg.str());
    }
    // Gamma_N - Gamma_N(0) vanishes at the singularity of G_d; the constant
    // part is paired with the exact mass.
    double acc = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) acc += (gamma[i] - origin) * green[i];
    res.values.push_back(acc * std::pow(2.0 * kPi / M, d) +
                         origin * gd_total_mass(d, opts.normalization));
    res.min_partial.push_back(lo);
  }
  res.trend = classify_increments(res.values, opts.trend);
  res.divergent = res.trend.verdict == SeriesVerdict::Divergent;
  return res;
}

}  // namespace vtorus
