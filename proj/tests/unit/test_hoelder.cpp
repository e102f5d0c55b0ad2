#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vtorus/error.hpp"
#include "vtorus/hoelder.hpp"

using namespace vtorus;

TEST(Hoelder, DyadicLags) {
  const auto l = dyadic_lags(-3, 0);
  EXPECT_EQ(l, (std::vector<double>{0.125, 0.25, 0.5, 1.0}));
  EXPECT_THROW(dyadic_lags(1, 0), InvalidArgument);
}

TEST(Hoelder, ZeroLagIsZero) {
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  EXPECT_EQ(analytic_increment(Kernel::exp(), spec, 8, ZeroModePolicy::Stationary, 0.0), 0.0);
  EXPECT_THROW(analytic_increment(Kernel::exp(), spec, 8, ZeroModePolicy::Stationary, -1.0),
               InvalidArgument);
}

TEST(Hoelder, ZeroModeIncrements) {
  const auto spec = CovarianceSpectrum::tabulated(1, {{{0}, 2.0}});
  for (double h : {0.01, 0.1, 1.0}) {
    // 2 gamma_0 (rho(0) - rho(h)) with rho(h) = e^{-h}/2
    EXPECT_NEAR(analytic_increment(Kernel::exp(), spec, 4, ZeroModePolicy::Stationary, h),
                2.0 * (1.0 - std::exp(-h)), 1e-8);
    EXPECT_NEAR(analytic_increment(Kernel::exp(), spec, 4, ZeroModePolicy::Brownian, h), 2.0 * h,
                1e-15);
  }
}

TEST(Hoelder, IncrementSeriesMatchesAutocovarianceOracle) {
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  const double h = 0.05;
  double want = 2.0 * (oracle::exp_autocovariance(0.0, 0.0) - oracle::exp_autocovariance(0.0, h));
  for (int n = 1; n <= 8; ++n) {
    const double m = n * n;
    want += 4.0 / (1.0 + m) * (oracle::exp_autocovariance(m, 0.0) - oracle::exp_autocovariance(m, h));
  }
  EXPECT_NEAR(analytic_increment(Kernel::exp(), spec, 8, ZeroModePolicy::Stationary, h), want,
              1e-7 * want);
}

TEST(Hoelder, AnalyticSlopeNearOne) {
  SimulationConfig c;
  c.n_max = 32;
  HoelderOptions o;
  o.lags = dyadic_lags(-10, -4);
  o.monte_carlo = false;
  const auto r = estimate_hoelder(Kernel::exp(), CovarianceSpectrum::parametric(1, 1.0, 1.0), c, o);
  EXPECT_FALSE(r.has_mc);
  EXPECT_NEAR(r.delta_analytic, 1.0, 0.1);
  EXPECT_EQ(r.eta_analytic, 0.5 * r.delta_analytic);
  ASSERT_EQ(r.points.size(), 7u);
  for (std::size_t i = 1; i < r.points.size(); ++i) EXPECT_GT(r.points[i].analytic, r.points[i - 1].analytic);
}

TEST(Hoelder, SmallMonteCarloRun) {
  SimulationConfig c;
  c.n_max = 4;
  c.time_grid = {1.0, 1.0 / 64, 33};
  c.conv_dt = 1.0 / 256;
  c.n_paths = 60;
  c.seed = 5;
  HoelderOptions o;
  o.lags = dyadic_lags(-6, -1);
  o.batch = 25;
  const auto r = estimate_hoelder(Kernel::exp(), CovarianceSpectrum::parametric(1, 1.0, 1.0), c, o);
  EXPECT_TRUE(r.has_mc);
  for (const auto& p : r.points) {
    EXPECT_GT(p.mc_mean, 0.0);
    EXPECT_GT(p.pairs, 0u);
  }
  EXPECT_GT(r.delta_mc, 0.5);
  EXPECT_LT(r.delta_mc, 1.5);
  EXPECT_LE(r.band_lo, r.band_hi);
}

TEST(Hoelder, Guards) {
  SimulationConfig c;
  HoelderOptions o;
  o.monte_carlo = false;
  o.lags = dyadic_lags(-3, -1);
  EXPECT_THROW(estimate_hoelder(Kernel::exp(), CovarianceSpectrum::parametric(1, 1.0, 1.0), c, o),
               InvalidArgument);
  o.lags = dyadic_lags(-6, -1);
  EXPECT_THROW(estimate_hoelder(Kernel::exp(), CovarianceSpectrum::white(2, 1.0), c, o),
               AssumptionViolation);
  o.monte_carlo = true;
  c.time_grid = {1.0, 0.3, 40};
  c.conv_dt = 0.01;
  EXPECT_THROW(estimate_hoelder(Kernel::exp(), CovarianceSpectrum::parametric(1, 1.0, 1.0), c, o),
               InvalidArgument);
}
