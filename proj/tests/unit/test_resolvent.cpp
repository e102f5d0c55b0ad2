#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vtorus/error.hpp"
#include "vtorus/resolvent.hpp"
#include "vtorus/resolvent_function.hpp"

using namespace vtorus;

namespace {

double max_error(const std::string& name, double mu, double dt, double horizon,
                 ResolventScheme scheme) {
  ResolventOptions o;
  o.scheme = scheme;
  const auto g = solve_resolvent(Kernel::builtin(name), mu, dt, horizon, o);
  double e = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    e = std::max(e, std::abs(g.values[j] - oracle::resolvent(name, mu, g.time(j))));
  }
  return e;
}

}  // namespace

TEST(Resolvent, ExpMinusOneCoarseGrid) {
  EXPECT_LE(max_error("exp", -1.0, 0.01, 5.0, ResolventScheme::Trapezoidal), 1e-4);
  EXPECT_LE(max_error("exp", -1.0, 0.01, 5.0, ResolventScheme::RichardsonTrapezoidal), 1e-4);
}

TEST(Resolvent, MuZeroReturnsKernelSamples) {
  for (auto* name : {"one", "linear", "exp", "texp"}) {
    const auto k = Kernel::builtin(name);
    for (auto scheme : {ResolventScheme::Trapezoidal, ResolventScheme::RichardsonTrapezoidal}) {
      ResolventOptions o;
      o.scheme = scheme;
      const auto g = solve_resolvent(k, 0.0, 0.01, 2.0, o);
      for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(g.values[j], k(g.time(j))) << name;
    }
  }
}

TEST(Resolvent, FirstValueSolvesTheZeroStep) {
  const auto g = solve_resolvent(Kernel::exp(), -3.0, 0.01, 1.0,
                                 {ResolventScheme::Trapezoidal, 0.5, 4096});
  // the convolution over [0, 0] vanishes, so r_0 = b_0.
  EXPECT_DOUBLE_EQ(g.values[0], 1.0);
}

TEST(Resolvent, TrapezoidIsSecondOrderForEveryBuiltin) {
  for (auto* name : {"one", "linear", "exp", "texp"}) {
    for (double mu : {-1.0, -4.0, -25.0}) {
      const double e1 = max_error(name, mu, 0.01, 5.0, ResolventScheme::Trapezoidal);
      const double e2 = max_error(name, mu, 0.005, 5.0, ResolventScheme::Trapezoidal);
      EXPECT_GE(std::log2(e1 / e2), 1.9) << name << " mu=" << mu;
    }
  }
}

TEST(Resolvent, HalvingDtQuartersTheErrorForExpMu25) {
  const double e1 = max_error("exp", -25.0, 0.004, 10.0, ResolventScheme::Trapezoidal);
  const double e2 = max_error("exp", -25.0, 0.002, 10.0, ResolventScheme::Trapezoidal);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(Resolvent, RichardsonIsMoreAccurate) {
  const double t = max_error("texp", -25.0, 0.01, 5.0, ResolventScheme::Trapezoidal);
  const double r = max_error("texp", -25.0, 0.01, 5.0, ResolventScheme::RichardsonTrapezoidal);
  EXPECT_LT(r, 0.05 * t);
}

TEST(Resolvent, FftPathMatchesDirectRecursion) {
  ResolventOptions direct;
  direct.scheme = ResolventScheme::Trapezoidal;
  direct.direct_limit = 1u << 30;
  ResolventOptions fft = direct;
  fft.direct_limit = 16;
  for (auto* name : {"exp", "texp", "one"}) {
    const auto a = solve_resolvent(Kernel::builtin(name), -4.0, 0.01, 20.0, direct);
    const auto b = solve_resolvent(Kernel::builtin(name), -4.0, 0.01, 20.0, fft);
    ASSERT_EQ(a.size(), b.size());
    double dev = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) dev = std::max(dev, std::abs(a.values[j] - b.values[j]));
    EXPECT_LT(dev, 1e-11) << name;
  }
}

TEST(Resolvent, GuardsAndPreconditions) {
  EXPECT_THROW(solve_resolvent(Kernel::exp(), 0.5, 0.01, 1.0), InvalidArgument);
  EXPECT_THROW(solve_resolvent(Kernel::exp(), -1.0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(solve_resolvent(Kernel::exp(), -1.0, 0.3, 1.0), InvalidArgument);
  EXPECT_THROW(solve_resolvent(Kernel::exp(), -100.0, 0.01, 1.0), NumericalFailure);
  const auto tab = Kernel::tabulated({1.0, 0.9, 0.8}, 0.5, true);
  EXPECT_THROW(solve_resolvent(tab, -1.0, 0.5, 2.0), InvalidArgument);
}

TEST(Resolvent, ResidualOfSolution) {
  const auto k = Kernel::exp();
  const auto g = solve_resolvent(k, -1.0, 1e-3, 5.0);
  EXPECT_LE(resolvent_residual(k, g), 1e-6);
}

TEST(Resolvent, ResidualOfSampledClosedFormIsQuadratureError) {
  const auto k = Kernel::texp();
  double prev = 0.0;
  for (double dt : {0.02, 0.01}) {
    ResolventGrid g{-4.0, dt, 4.0, ResolventScheme::Trapezoidal, {}};
    const auto n = static_cast<std::size_t>(std::llround(4.0 / dt)) + 1;
    for (std::size_t j = 0; j < n; ++j) g.values.push_back(oracle::resolvent("texp", -4.0, j * dt));
    const double res = resolvent_residual(k, g);
    EXPECT_LT(res, 1e-4);
    if (prev > 0.0) EXPECT_GT(prev / res, 3.0);
    prev = res;
  }
}

TEST(Resolvent, ResidualOfZeroGridIsMaxKernel) {
  ResolventGrid g{-1.0, 0.01, 1.0, ResolventScheme::Trapezoidal, std::vector<double>(101, 0.0)};
  EXPECT_DOUBLE_EQ(resolvent_residual(Kernel::exp(), g), 1.0);
}

TEST(Resolvent, LaplaceIdentity) {
  for (auto* name : {"exp", "texp"}) {
    const auto k = Kernel::builtin(name);
    for (double mu : {-1.0, -4.0}) {
      const auto g = solve_resolvent(k, mu, 1e-3, 40.0);
      ASSERT_LT(std::abs(g.values.back()), 1e-10);
      for (double lambda : {0.1, 0.5, 1.0, 2.5, 5.0}) {
        const double bt = laplace_transform(k, lambda).value.real();
        EXPECT_NEAR(grid_laplace(g, lambda), bt / (1.0 - mu * bt), 1e-4)
            << name << " mu=" << mu << " lambda=" << lambda;
      }
    }
  }
}

TEST(Resolvent, TabulatedKernelMatchesItsSource) {
  // e^{-t} tabulated on a fine grid behaves like the builtin.
  std::vector<double> s;
  for (int j = 0; j <= 20000; ++j) s.push_back(std::exp(-j * 1e-3));
  const auto tab = Kernel::tabulated(s, 1e-3, true);
  const auto g = solve_resolvent(tab, -1.0, 1e-3, 10.0);
  double e = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    e = std::max(e, std::abs(g.values[j] - std::exp(-2.0 * g.time(j))));
  }
  EXPECT_LT(e, 1e-6);
}

TEST(ResolventFunction, GridAndClosedFormAgree) {
  for (auto* name : {"exp", "texp"}) {
    const auto k = Kernel::builtin(name);
    const auto cf = ResolventFunction::build(k, -9.0);
    const auto gr = ResolventFunction::build(k, -9.0, {}, true);
    EXPECT_TRUE(cf.is_closed_form());
    EXPECT_FALSE(gr.is_closed_form());
    // nodes carry the solver error only; between nodes linear interpolation
    // adds up to dt^2/8 max|r''| with dt = 1e-3, |r''| <= 100
    for (double t : {0.0, 0.5, 2.0}) EXPECT_NEAR(cf(t), gr(t), 1e-8) << name;
    for (double t : {0.0123, 4.321}) EXPECT_NEAR(cf(t), gr(t), 1.3e-5) << name;
    EXPECT_NEAR(integral_r2(cf).value, oracle::squared_integral(name, 9.0), 1e-13);
    EXPECT_NEAR(integral_r2(gr).value, oracle::squared_integral(name, 9.0), 1e-7);
  }
}

TEST(ResolventFunction, AutocovarianceAndIncrements) {
  const auto r = ResolventFunction::build(Kernel::exp(), -3.0);
  EXPECT_NEAR(autocovariance(r, 0.0).value, 0.125, 1e-14);
  for (double h : {0.01, 0.3, 2.0}) {
    EXPECT_NEAR(autocovariance(r, h).value, oracle::exp_autocovariance(3.0, h), 1e-14);
    // r = e^{-a s}: int (e^{-a(s+h)} - e^{-a s})^2 ds = (1 - e^{-a h})^2 / (2a)
    const double a = 4.0;
    const double expected = std::pow(1.0 - std::exp(-a * h), 2) / (2 * a);
    EXPECT_NEAR(increment_energy(r, h).value, expected, 1e-13);
  }
}

TEST(ResolventFunction, TailHorizonAndCellAverages) {
  const auto r = ResolventFunction::build(Kernel::exp(), 0.0);  // e^{-t}
  const double T = tail_horizon(r, 1e-10, 0.01);
  // int_T^inf e^{-2s} / int_0^inf e^{-2s} = e^{-2T}
  EXPECT_LE(std::exp(-2 * T), 1e-10 * (1 + 1e-9));
  EXPECT_GT(std::exp(-2 * (T - 0.01)), 1e-10);
  const auto avg = cell_averages(r, 0.1, 3);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(avg[j], (std::exp(-0.1 * j) - std::exp(-0.1 * (j + 1))) / 0.1, 1e-8);
  }
  EXPECT_THROW(integral_r2(ResolventFunction::build(Kernel::one(), 0.0)), NumericalFailure);
}
