#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vtorus/error.hpp"
#include "vtorus/quadrature.hpp"

using namespace vtorus;

TEST(Quadrature, PolynomialAndOscillatory) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-13);
  QuadOptions o;
  o.panels = 40;
  EXPECT_NEAR(integrate([](double x) { return std::sin(50 * x) * std::sin(50 * x); }, 0.0,
                        std::numbers::pi, o)
                  .value,
              std::numbers::pi / 2, 1e-11);
}

TEST(Quadrature, ShortPanelsStayCheap) {
  int calls = 0;
  QuadOptions o;
  o.panels = 200;
  const auto q = integrate(
      [&](double x) {
        ++calls;
        return std::exp(-2050.0 * x);
      },
      0.0, 0.02, o);
  EXPECT_NEAR(q.value, (1.0 - std::exp(-41.0)) / 2050.0, 1e-15);
  EXPECT_LT(calls, 200 * 16 * 31);
}

TEST(Quadrature, TailIntegration) {
  TailOptions o;
  o.tail_tol = 1e-14;
  const auto q = integrate_to_infinity([](double x) { return std::exp(-3 * x); }, o);
  EXPECT_NEAR(q.value, 1.0 / 3.0, 1e-13);
  EXPECT_GT(q.horizon, 8.0);
  o.max_horizon = 50;
  EXPECT_THROW(integrate_to_infinity([](double) { return 1.0; }, o), NumericalFailure);
}

TEST(Quadrature, SimpsonVariants) {
  std::vector<double> y;
  for (int i = 0; i <= 4; ++i) y.push_back(std::pow(0.25 * i, 3));
  EXPECT_NEAR(simpson(y, 0.25), 0.25, 1e-15);
  y.push_back(std::pow(1.25, 3));  // odd interval count: 3/8 closing panel
  EXPECT_NEAR(simpson(y, 0.25), std::pow(1.25, 4) / 4, 1e-14);
  EXPECT_NEAR(simpson(std::vector<double>{1.0, 3.0}, 2.0), 4.0, 1e-15);
}
