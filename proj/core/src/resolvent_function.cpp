#include "vtorus/resolvent_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vtorus/error.hpp"

namespace vtorus {

namespace {

TailOptions tail_options(const ResolventFunction& r, const IntegralOptions& opts) {
  if (r.decay_rate() <= 0.0) {
    std::ostringstream msg;
    msg << "resolvent at mu=" << r.mu() << " does not decay; the integral over [0, inf) diverges";
    throw NumericalFailure(msg.str());
  }
  TailOptions t;
  t.chunk = std::min(4.0 / r.decay_rate(), 8.0);
  t.panels_per_chunk = 1 + static_cast<int>(std::ceil(t.chunk * r.frequency() / 2.0));
  t.tail_tol = opts.tail_tol;
  t.max_horizon = opts.max_horizon;
  t.rel_tol = opts.rel_tol;
  return t;
}

int oscillation_panels(const ResolventFunction& r, double width) {
  return 1 + static_cast<int>(std::ceil(width * std::max(r.frequency(), 1.0) / 2.0));
}

// Node samples of f(t_j) on the grid, Simpson at steps dt and 2 dt combined
// by one Romberg step (Boole's rule, O(dt^6)); past the horizon r is 0.
template <typename F>
double grid_simpson(const ResolventGrid& g, std::size_t nodes, F&& f) {
  std::vector<double> y(nodes);
  for (std::size_t j = 0; j < nodes; ++j) y[j] = f(g.time(j));
  const std::size_t even = nodes == 0 ? 0 : (nodes - 1) / 4 * 4;
  if (even < 8) return simpson(y, g.dt);
  const std::span<const double> head(y.data(), even + 1);
  std::vector<double> coarse;
  for (std::size_t j = 0; j <= even; j += 2) coarse.push_back(y[j]);
  const double fine = simpson(head, g.dt);
  double total = fine + (fine - simpson(coarse, 2.0 * g.dt)) / 15.0;
  if (even + 1 < nodes) total += simpson(std::span<const double>(y).subspan(even), g.dt);
  return total;
}

}  // namespace

ResolventFunction ResolventFunction::closed_form(const Kernel& kernel, double mu) {
  if (!kernel.is_builtin()) {
    throw InvalidArgument("closed-form resolvent requires a builtin kernel, got '" + kernel.id() +
                          "'");
  }
  if (!(mu <= 0.0)) throw InvalidArgument("resolvent: mu must be <= 0");
  ResolventFunction r;
  r.kernel_ = kernel;
  r.mu_ = mu;
  const double m = -mu;
  switch (kernel.kind()) {
    case KernelKind::One: r.decay_ = m; break;
    case KernelKind::Exp: r.decay_ = 1.0 + m; break;
    case KernelKind::Linear: r.omega_ = std::sqrt(m); break;
    case KernelKind::TExp:
      r.decay_ = 1.0;
      r.omega_ = std::sqrt(m);
      break;
    default: break;
  }
  return r;
}

ResolventFunction ResolventFunction::from_grid(ResolventGrid grid) {
  ResolventFunction r;
  r.mu_ = grid.mu;
  r.grid_ = std::move(grid);
  return r;
}

ResolventFunction ResolventFunction::build(const Kernel& kernel, double mu, const GridSource& src,
                                           bool force_grid) {
  if (kernel.is_builtin() && !force_grid) return closed_form(kernel, mu);

  double horizon = std::min(src.initial_horizon, src.max_horizon);
  if (std::isfinite(kernel.horizon())) horizon = std::min(horizon, kernel.horizon());
  horizon = std::max(src.dt * 4.0, std::round(horizon / src.dt) * src.dt);
  for (;;) {
    auto grid = solve_resolvent(kernel, mu, src.dt, horizon, src.solver);
    const std::size_t n = grid.size() - 1;
    std::vector<double> sq(grid.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = grid.values[j] * grid.values[j];
    const std::size_t half = n / 2, quarter = n / 4;
    const double last = simpson(std::span<const double>(sq).subspan(half), grid.dt);
    const double before =
        simpson(std::span<const double>(sq).subspan(quarter, half - quarter + 1), grid.dt);
    // a roundoff floor never shows geometric decay; negligible mass is enough
    bool ok = last < 1e-3 * src.tail_tol;
    if (!ok && before > 0.0) {
      const double q = last / before;
      ok = q < 0.9 && last * q / (1.0 - q) < src.tail_tol;
    }
    if (ok) return from_grid(std::move(grid));

    const double cap = std::min(src.max_horizon, kernel.horizon());
    if (horizon >= cap * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "resolvent tail at mu=" << mu << " is not below " << src.tail_tol
          << " within horizon " << horizon;
      throw NumericalFailure(msg.str());
    }
    horizon = std::min(2.0 * horizon, cap);
    horizon = std::floor(horizon / src.dt + 1e-9) * src.dt;
  }
}

double ResolventFunction::operator()(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("resolvent evaluated at negative time");
  if (kernel_) return resolvent_closed_form(*kernel_, mu_, t);
  const auto& g = *grid_;
  const double x = t / g.dt;
  const auto j = static_cast<std::size_t>(x);
  if (j + 1 >= g.size()) return j + 1 == g.size() && x == static_cast<double>(j) ? g.values[j] : 0.0;
  const double w = x - static_cast<double>(j);
  return (1.0 - w) * g.values[j] + w * g.values[j + 1];
}

TailQuadrature integral_r2(const ResolventFunction& r, const IntegralOptions& opts) {
  if (const auto* g = r.grid()) {
    TailQuadrature out;
    out.value = grid_simpson(*g, g->size(), [&](double t) { return r(t) * r(t); });
    out.horizon = g->horizon;
    return out;
  }
  return integrate_to_infinity([&](double s) { const double v = r(s); return v * v; },
                               tail_options(r, opts));
}

Quadrature integral_r2_upto(const ResolventFunction& r, double upper, const IntegralOptions& opts) {
  if (!(upper >= 0.0)) throw InvalidArgument("integral_r2_upto: upper limit must be >= 0");
  if (upper == 0.0) return {};
  if (const auto* g = r.grid()) {
    // Simpson on whole cells, then a Gauss-Legendre piece on the remainder.
    const double cells = std::floor(upper / g->dt + 1e-9);
    const auto nodes = std::min<std::size_t>(static_cast<std::size_t>(cells) + 1, g->size());
    Quadrature out;
    out.value = grid_simpson(*g, nodes, [&](double t) { return r(t) * r(t); });
    const double a = static_cast<double>(nodes - 1) * g->dt;
    if (upper > a) {
      out.value += integrate([&](double s) { const double v = r(s); return v * v; }, a, upper,
                             {opts.rel_tol, 1, 6})
                       .value;
    }
    return out;
  }
  QuadOptions q;
  q.rel_tol = opts.rel_tol;
  q.panels = oscillation_panels(r, upper) +
             static_cast<int>(std::min(upper * r.decay_rate() / 4.0, 1e5));
  return integrate([&](double s) { const double v = r(s); return v * v; }, 0.0, upper, q);
}

TailQuadrature autocovariance(const ResolventFunction& r, double h, const IntegralOptions& opts) {
  if (!(h >= 0.0)) throw InvalidArgument("autocovariance: lag must be >= 0");
  if (const auto* g = r.grid()) {
    TailQuadrature out;
    out.value = grid_simpson(*g, g->size(), [&](double t) { return r(t) * r(t + h); });
    out.horizon = g->horizon;
    return out;
  }
  return integrate_to_infinity([&](double s) { return r(s) * r(s + h); }, tail_options(r, opts));
}

TailQuadrature increment_energy(const ResolventFunction& r, double h, const IntegralOptions& opts) {
  if (!(h >= 0.0)) throw InvalidArgument("increment_energy: lag must be >= 0");
  if (h == 0.0) return {};
  auto f = [&](double s) { const double d = r(s + h) - r(s); return d * d; };
  if (const auto* g = r.grid()) {
    TailQuadrature out;
    out.value = grid_simpson(*g, g->size(), f);
    out.horizon = g->horizon;
    return out;
  }
  return integrate_to_infinity(f, tail_options(r, opts));
}

double tail_horizon(const ResolventFunction& r, double rel_mass, double resolution,
                    const IntegralOptions& opts) {
  if (!(rel_mass > 0.0 && rel_mass < 1.0)) {
    throw InvalidArgument("tail_horizon: rel_mass must lie in (0, 1)");
  }
  if (!(resolution > 0.0)) throw InvalidArgument("tail_horizon: resolution must be > 0");

  if (const auto* g = r.grid()) {
    std::vector<double> sq(g->size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = g->values[j] * g->values[j];
    std::vector<double> suffix(sq.size(), 0.0);
    for (std::size_t j = sq.size() - 1; j-- > 0;) {
      suffix[j] = suffix[j + 1] + 0.5 * g->dt * (sq[j] + sq[j + 1]);
    }
    const double target = rel_mass * suffix[0];
    std::size_t j = 0;
    while (j + 1 < suffix.size() && suffix[j] > target) ++j;
    return std::ceil(g->time(j) / resolution - 1e-9) * resolution;
  }

  const double total = integral_r2(r, opts).value;
  if (total == 0.0) return resolution;
  IntegralOptions tail_opts = opts;
  tail_opts.tail_tol = std::min(opts.tail_tol, 1e-3 * rel_mass * total);
  TailOptions t = tail_options(r, tail_opts);
  auto tail = [&](double T) {
    return integrate_to_infinity([&](double s) { const double v = r(T + s); return v * v; }, t)
        .value;
  };
  const double target = rel_mass * total;
  double hi = resolution;
  while (tail(hi) > target) {
    hi *= 2.0;
    if (hi > opts.max_horizon) {
      throw NumericalFailure("tail_horizon: resolvent tail mass does not fall below target");
    }
  }
  double lo = hi == resolution ? 0.0 : hi / 2.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > target ? lo : hi) = mid;
  }
  return std::ceil(hi / resolution - 1e-9) * resolution;
}

std::vector<double> cell_averages(const ResolventFunction& r, double dt, std::size_t count) {
  if (!(dt > 0.0)) throw InvalidArgument("cell_averages: dt must be > 0");
  static constexpr double node = 0.7745966692414834;  // sqrt(3/5)
  std::vector<double> w(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double c = (static_cast<double>(j) + 0.5) * dt;
    const double h = 0.5 * dt;
    w[j] = (5.0 * r(c - node * h) + 8.0 * r(c) + 5.0 * r(c + node * h)) / 18.0;
  }
  return w;
}

}  // namespace vtorus
