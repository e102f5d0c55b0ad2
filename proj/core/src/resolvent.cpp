#include "vtorus/resolvent.hpp"

#include <cmath>
#include <sstream>

#include "series.hpp"
#include "vtorus/error.hpp"
#include "vtorus/quadrature.hpp"

namespace vtorus {

namespace {

std::size_t grid_intervals(double dt, double horizon) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("resolvent: dt must be > 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("resolvent: horizon must be > 0");
  }
  const double ratio = horizon / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
    std::ostringstream msg;
    msg << "resolvent: dt=" << dt << " does not divide horizon=" << horizon;
    throw InvalidArgument(msg.str());
  }
  return static_cast<std::size_t>(n);
}

std::vector<double> trapezoid_direct(const std::vector<double>& b, double mu, double dt) {
  const std::size_t n = b.size();
  std::vector<double> r(n);
  r[0] = b[0];
  const double md = mu * dt;
  const double denom = 1.0 - 0.5 * md * b[0];
  for (std::size_t j = 1; j < n; ++j) {
    // sum_{i=1}^{j-1} b[j-i] r[i], four partial sums in fixed order
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 1;
    for (; i + 3 < j; i += 4) {
      s0 += b[j - i] * r[i];
      s1 += b[j - i - 1] * r[i + 1];
      s2 += b[j - i - 2] * r[i + 2];
      s3 += b[j - i - 3] * r[i + 3];
    }
    for (; i < j; ++i) s0 += b[j - i] * r[i];
    const double hist = (s0 + s1) + (s2 + s3);
    r[j] = (b[j] + md * (0.5 * b[j] * r[0] + hist)) / denom;
  }
  return r;
}

// Same discrete system as trapezoid_direct written as a power-series identity:
//   R (1 + mu dt b0/2 - mu dt B) = (1 - mu dt b0/2) B.
std::vector<double> trapezoid_fast(const std::vector<double>& b, double mu, double dt) {
  const std::size_t n = b.size();
  const double md = mu * dt;
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = -md * b[j];
  d[0] += 1.0 + 0.5 * md * b[0];
  const auto inv = detail::series_inverse(d, n);
  auto r = detail::series_multiply(b, inv, n);
  const double c = 1.0 - 0.5 * md * b[0];
  for (auto& v : r) v *= c;
  r[0] = b[0];
  return r;
}

std::vector<double> trapezoid(const std::vector<double>& b, double mu, double dt,
                              const ResolventOptions& opts) {
  if (mu == 0.0) return b;
  if (b.size() <= opts.direct_limit) return trapezoid_direct(b, mu, dt);
  return trapezoid_fast(b, mu, dt);
}

void check_stiffness(const Kernel& kernel, double mu, double dt, const ResolventOptions& opts) {
  const double z = std::abs(mu) * dt;
  const double b0 = std::abs(kernel.at_zero());
  if (z > opts.stiffness_limit || 0.5 * z * b0 >= 1.0) {
    std::ostringstream msg;
    msg << "resolvent: |mu| dt = " << z << " exceeds the stiffness limit "
        << opts.stiffness_limit << "; use dt <= " << opts.stiffness_limit / std::abs(mu);
    throw NumericalFailure(msg.str());
  }
}

}  // namespace

std::vector<double> sample_kernel(const Kernel& kernel, double dt, std::size_t n) {
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = kernel(static_cast<double>(j) * dt);
  return b;
}

ResolventGrid solve_resolvent(const Kernel& kernel, double mu, double dt, double horizon,
                              const ResolventOptions& opts) {
  if (!(mu <= 0.0)) throw InvalidArgument("solve_resolvent: mu must be real and <= 0");
  const std::size_t n = grid_intervals(dt, horizon);
  if (horizon > kernel.horizon() * (1.0 + 1e-12)) {
    throw InvalidArgument("solve_resolvent: horizon beyond the tabulated kernel's range");
  }
  check_stiffness(kernel, mu, dt, opts);

  ResolventGrid grid;
  grid.mu = mu;
  grid.dt = dt;
  grid.horizon = horizon;
  grid.scheme = opts.scheme;

  const auto coarse_b = sample_kernel(kernel, dt, n + 1);
  grid.values = trapezoid(coarse_b, mu, dt, opts);
  if (opts.scheme == ResolventScheme::RichardsonTrapezoidal && mu != 0.0) {
    const auto fine_b = sample_kernel(kernel, 0.5 * dt, 2 * n + 1);
    const auto fine = trapezoid(fine_b, mu, 0.5 * dt, opts);
    for (std::size_t j = 1; j <= n; ++j) {
      grid.values[j] = (4.0 * fine[2 * j] - grid.values[j]) / 3.0;
    }
  }
  for (std::size_t j = 0; j <= n; ++j) {
    if (!std::isfinite(grid.values[j])) {
      std::ostringstream msg;
      msg << "solve_resolvent: non-finite value at t=" << grid.time(j)
          << " (mu=" << mu << ", dt=" << dt << "); refine dt";
      throw NumericalFailure(msg.str());
    }
  }
  return grid;
}

double resolvent_residual(const Kernel& kernel, const ResolventGrid& grid) {
  const auto& r = grid.values;
  const std::size_t n = r.size();
  if (n == 0) return 0.0;
  const auto b = sample_kernel(kernel, grid.dt, n);
  std::vector<double> prod;
  prod.reserve(n);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prod.resize(j + 1);
    for (std::size_t i = 0; i <= j; ++i) prod[i] = b[j - i] * r[i];
    const double q = simpson(prod, grid.dt);
    worst = std::max(worst, std::abs(r[j] - b[j] - grid.mu * q));
  }
  return worst;
}

double grid_laplace(const ResolventGrid& grid, double lambda) {
  std::vector<double> y(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    y[j] = std::exp(-lambda * grid.time(j)) * grid.values[j];
  }
  return simpson(y, grid.dt);
}

}  // namespace vtorus
