#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vtorus/error.hpp"
#include "vtorus/simulate.hpp"

using namespace vtorus;

namespace {

SimulationConfig small_config(int d = 1) {
  SimulationConfig c;
  c.d = d;
  c.n_max = 3;
  c.time_grid = {1.0, 0.01, 8};
  c.conv_dt = 1e-3;
  c.n_paths = 40;
  c.seed = 11;
  return c;
}

}  // namespace

TEST(Simulate, ZeroSpectrumGivesZeroPaths) {
  const auto spec = CovarianceSpectrum::parametric(1, 0.0, 1.0);
  const auto e = simulate_convolution(Kernel::exp(), spec, small_config());
  for (double v : e.data) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(analytic_second_moment(Kernel::exp(), spec, -1.0, 8).value, 0.0);
  for (const auto& m : estimate_moment(e, -1.0)) {
    EXPECT_EQ(m.mean, 0.0);
    EXPECT_EQ(m.se, 0.0);
  }
}

TEST(Simulate, Shape) {
  const auto e = simulate_convolution(Kernel::exp(), CovarianceSpectrum::white(2, 1.0), small_config(2));
  EXPECT_EQ(e.n_paths, 40u);
  EXPECT_EQ(e.n_times, 8u);
  EXPECT_EQ(e.n_slots, 1 + 2 * build_index_set(2, 3).size());
  EXPECT_EQ(e.data.size(), e.n_paths * e.n_times * e.n_slots);
  EXPECT_EQ(e.memory_horizons.size(), e.n_slots);
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  auto c = small_config(2);
  const auto spec = CovarianceSpectrum::parametric(2, 1.0, 1.0);
  c.threads = 1;
  const auto a = simulate_convolution(Kernel::texp(), spec, c);
  c.threads = 4;
  const auto b = simulate_convolution(Kernel::texp(), spec, c);
  EXPECT_EQ(a.data, b.data);
  c.threads = 3;
  const auto x = simulate_exact_gaussian(Kernel::texp(), spec, c);
  c.threads = 1;
  const auto y = simulate_exact_gaussian(Kernel::texp(), spec, c);
  EXPECT_EQ(x.data, y.data);
}

TEST(Simulate, BatchesAreSlicesOfTheFullRun) {
  const auto c = small_config();
  const auto spec = CovarianceSpectrum::white(1, 1.0);
  const auto full = simulate_convolution(Kernel::exp(), spec, c);
  const auto part = simulate_convolution_batch(Kernel::exp(), spec, c, 13, 9);
  EXPECT_EQ(part.first_path, 13u);
  ASSERT_EQ(part.n_paths, 9u);
  for (std::size_t p = 0; p < 9; ++p)
    for (std::size_t k = 0; k < c.time_grid.count; ++k)
      for (std::size_t s = 0; s < full.n_slots; ++s)
        EXPECT_EQ(part.at(p, k, s), full.at(13 + p, k, s));
  EXPECT_THROW(simulate_convolution_batch(Kernel::exp(), spec, c, 35, 6), InvalidArgument);
}

TEST(Simulate, SeedChangesPaths) {
  auto c = small_config();
  const auto spec = CovarianceSpectrum::white(1, 1.0);
  const auto a = simulate_convolution(Kernel::exp(), spec, c);
  c.seed = 12;
  const auto b = simulate_convolution(Kernel::exp(), spec, c);
  EXPECT_NE(a.data, b.data);
}

TEST(Simulate, AnalyticSecondMomentExamples) {
  // zero mode only: gamma_0 int_0^inf e^{-2s} ds
  const auto zero_only = CovarianceSpectrum::tabulated(1, {{{0}, 1.0}});
  EXPECT_NEAR(analytic_second_moment(Kernel::exp(), zero_only, -1.0, 4).value, 0.5, 1e-9);
  const auto brown = analytic_second_moment(Kernel::exp(), zero_only, -1.0, 4,
                                            ZeroModePolicy::Brownian, 3.0);
  EXPECT_TRUE(brown.time_dependent);
  EXPECT_EQ(brown.value, 3.0);

  // parametric d = 1 against the closed form 2 gamma_n (1+n^2)^{alpha+1} / (2(1+n^2))
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  double want = 0.5;
  for (int n = 1; n <= 16; ++n) {
    const double a = 1.0 + n * n;
    want += 2.0 / a * std::pow(a, 0.5) * oracle::squared_integral("exp", n * n);
  }
  EXPECT_NEAR(analytic_second_moment(Kernel::exp(), spec, -0.5, 16).value, want, 1e-8 * want);
  EXPECT_THROW(analytic_second_moment(Kernel::one(), spec, -1.0, 4), AssumptionViolation);
}

TEST(Simulate, SecondMomentIncreasesWithTruncation) {
  double prev = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double v =
        analytic_second_moment(Kernel::texp(), CovarianceSpectrum::white(3, 1.0), 0.0, n).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
  // white noise in d = 3 gains roughly a constant per shell at alpha = 0
  const double a = analytic_second_moment(Kernel::texp(), CovarianceSpectrum::white(3, 1.0), 0.0, 16).value;
  const double b = analytic_second_moment(Kernel::texp(), CovarianceSpectrum::white(3, 1.0), 0.0, 32).value;
  EXPECT_GT(b, 1.5 * a);
}

TEST(Simulate, ModeAutocovarianceExamples) {
  const std::vector<double> lags{0.0, 0.1, 0.5, 2.0};
  for (double m : {0.0, 1.0, 4.0}) {
    const auto rho = mode_autocovariance(Kernel::exp(), m, lags);
    for (std::size_t i = 0; i < lags.size(); ++i) {
      EXPECT_NEAR(rho[i], oracle::exp_autocovariance(m, lags[i]), 1e-9);
    }
  }
  // texp: rho(0) = int r^2 and |rho(h)| <= rho(0)
  const auto rho = mode_autocovariance(Kernel::texp(), 1.0, lags);
  EXPECT_NEAR(rho[0], oracle::squared_integral("texp", 1.0), 1e-9);
  for (double v : rho) EXPECT_LE(std::abs(v), rho[0] + 1e-15);
  EXPECT_THROW(mode_autocovariance(Kernel::linear(), 1.0, lags), AssumptionViolation);
}

TEST(Simulate, MomentMatchesAnalyticWithinNoise) {
  auto c = small_config();
  c.n_paths = 400;
  c.time_grid.count = 2;
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  const auto e = simulate_convolution(Kernel::exp(), spec, c);
  const double want = analytic_second_moment(Kernel::exp(), spec, -1.0, c.n_max).value;
  for (const auto& m : estimate_moment(e, -1.0)) EXPECT_LT(std::abs(m.mean - want), 4 * m.se);
  const auto x = simulate_exact_gaussian(Kernel::exp(), spec, c);
  for (const auto& m : estimate_moment(x, -1.0)) EXPECT_LT(std::abs(m.mean - want), 4 * m.se);
}

TEST(Simulate, NormMatchesEstimateMoment) {
  const auto e = simulate_convolution(Kernel::exp(), CovarianceSpectrum::white(2, 1.0), small_config(2));
  const auto est = estimate_moment(e, 0.3);
  std::vector<double> v;
  for (std::size_t p = 0; p < e.n_paths; ++p) v.push_back(coefficient_norm2(e.index_set, e.coefficients(p, 2), 0.3));
  EXPECT_NEAR(mean_se(v).mean, est[2].mean, 1e-12 * est[2].mean);
}

TEST(Simulate, FieldEvaluationAndParseval) {
  const auto e = simulate_convolution(Kernel::exp(), CovarianceSpectrum::white(2, 1.0), small_config(2));
  const auto grid = theta_grid(2, 16);
  ASSERT_EQ(grid.size(), 2u * 256u);
  const auto f = evaluate_field(e, grid, 5, 3);
  double mean_sq = 0.0;
  for (double v : f) mean_sq += v * v;
  mean_sq /= static_cast<double>(f.size());
  const double norm = coefficient_norm2(e.index_set, e.coefficients(5, 3), -1.0);
  EXPECT_NEAR(mean_sq, norm, 1e-10 * norm);

  // at theta = 0 the field is the sum of X_0 and every cosine coefficient
  const std::vector<double> origin{0.0, 0.0};
  const auto c = e.coefficients(5, 3);
  double want = c[0];
  for (std::size_t m = 0; m < e.index_set.size(); ++m) want += c[slot_cos(m)];
  EXPECT_NEAR(evaluate_field(e, origin, 5, 3)[0], want, 1e-12);
  EXPECT_THROW(evaluate_field(e, origin, 99, 0), InvalidArgument);
}

TEST(Simulate, ConfigValidation) {
  const auto spec = CovarianceSpectrum::white(1, 1.0);
  const auto k = Kernel::exp();
  EXPECT_NO_THROW(validate_config(k, spec, small_config()));
  auto c = small_config();
  c.d = 2;
  EXPECT_THROW(validate_config(k, spec, c), InvalidArgument);
  c = small_config();
  c.conv_dt = 0.02;
  EXPECT_THROW(validate_config(k, spec, c), InvalidArgument);
  c = small_config();
  c.tail_mass = 1.0;
  EXPECT_THROW(validate_config(k, spec, c), InvalidArgument);
  c = small_config();
  c.n_paths = 0;
  EXPECT_THROW(validate_config(k, spec, c), InvalidArgument);
  c = small_config();
  c.time_grid.count = 0;
  EXPECT_THROW(validate_config(k, spec, c), InvalidArgument);
  EXPECT_THROW(simulate_convolution(Kernel::one(), spec, small_config()), AssumptionViolation);
}

TEST(Simulate, PolicyNames) {
  EXPECT_EQ(parse_zero_mode_policy("stationary"), ZeroModePolicy::Stationary);
  EXPECT_EQ(parse_zero_mode_policy("brownian"), ZeroModePolicy::Brownian);
  EXPECT_THROW(parse_zero_mode_policy("frozen"), InvalidArgument);
}
