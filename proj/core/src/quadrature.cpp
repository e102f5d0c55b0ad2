#include "vtorus/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vtorus/error.hpp"

namespace vtorus {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct PanelResult {
  double value;
  double error;
  double l1;
};

PanelResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                             int panels, double rel_tol, unsigned max_depth) {
  PanelResult out{0.0, 0.0, 0.0};
  const int m = std::max(panels, 1);
  const double h = (b - a) / m;
  for (int p = 0; p < m; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == m) ? b : a + (p + 1) * h;
    // Map each panel onto [-1, 1] first: the library compares its
    // unscaled error estimate against a scaled tolerance, which on short
    // panels would force subdivision down to max_depth.
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto g = [&](double x) { return half * f(mid + half * x); };
    double err = 0.0;
    double l1 = 0.0;
    out.value += Rule::integrate(g, -1.0, 1.0, max_depth, rel_tol, &err, &l1);
    out.error += err;
    out.l1 += l1;
  }
  return out;
}

}  // namespace

Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts) {
  if (!(b >= a)) {
    throw InvalidArgument("integrate: upper limit below lower limit");
  }
  if (a == b) return {};
  const auto r = integrate_panels(f, a, b, opts.panels, opts.rel_tol, opts.max_depth);
  if (!std::isfinite(r.value)) {
    throw NumericalFailure("integrate: non-finite quadrature result");
  }
  return {r.value, r.error};
}

TailQuadrature integrate_to_infinity(const std::function<double(double)>& f,
                                     const TailOptions& opts) {
  if (!(opts.chunk > 0.0)) throw InvalidArgument("integrate_to_infinity: chunk must be > 0");

  TailQuadrature out;
  double prev_l1 = -1.0;
  double prev_ratio = 1.0;
  int chunks = 0;
  for (double a = 0.0;; a += opts.chunk) {
    const double b = a + opts.chunk;
    const auto r = integrate_panels(f, a, b, opts.panels_per_chunk, opts.rel_tol, 12);
    if (!std::isfinite(r.value)) {
      throw NumericalFailure("integrate_to_infinity: non-finite integrand");
    }
    out.value += r.value;
    out.error += r.error;
    out.horizon = b;
    ++chunks;

    if (r.l1 == 0.0 && chunks >= 2) return out;
    if (prev_l1 > 0.0) {
      const double ratio = r.l1 / prev_l1;
      const double q = std::max(ratio, prev_ratio);
      if (chunks >= 3 && q < 0.95) {
        const double tail = r.l1 * q / (1.0 - q);
        if (tail < opts.tail_tol) {
          out.error += tail;
          return out;
        }
      }
      prev_ratio = ratio;
    }
    prev_l1 = r.l1;

    if (b >= opts.max_horizon) {
      std::ostringstream msg;
      msg << "integrate_to_infinity: tail not decaying within horizon " << opts.max_horizon
          << " (last chunk mass " << r.l1 << ")";
      throw NumericalFailure(msg.str());
    }
  }
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  if (intervals == 1) return 0.5 * h * (y[0] + y[1]);

  double total = 0.0;
  std::size_t end = intervals;
  if (intervals % 2 == 1) {
    // closing 3/8 panel on the last three intervals
    const std::size_t k = intervals - 3;
    total += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    end = k;
  }
  if (end > 0) {
    double acc = y[0] + y[end];
    for (std::size_t i = 1; i < end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
    total += h / 3.0 * acc;
  }
  return total;
}

}  // namespace vtorus
