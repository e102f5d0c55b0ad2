#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vtorus/admissibility.hpp"
#include "vtorus/error.hpp"

using namespace vtorus;

TEST(Admissibility, SquaredIntegralExamples) {
  EXPECT_NEAR(squared_resolvent_integral(Kernel::exp(), 9.0, 1e-3), 0.05, 1e-13);
  EXPECT_NEAR(squared_resolvent_integral(Kernel::texp(), 1.0, 1e-3), 0.125, 1e-13);
  EXPECT_NEAR(squared_resolvent_integral(Kernel::exp(), 0.0, 1e-3), 0.5, 1e-13);
}

TEST(Admissibility, NonIntegrableKernelsRejected) {
  EXPECT_THROW(squared_resolvent_integral(Kernel::one(), 1.0, 1e-3), AssumptionViolation);
  EXPECT_THROW(squared_resolvent_integral(Kernel::linear(), 1.0, 1e-3), AssumptionViolation);
  EXPECT_THROW(estimate_Cb(Kernel::one(), 64, 1e-6), AssumptionViolation);
  EXPECT_THROW(estimate_Cb(Kernel::exp(), 4, 1e-6), InvalidArgument);
}

TEST(Admissibility, CurveExamples) {
  const auto t = admissibility_curve(Kernel::texp(), {10.0});
  EXPECT_NEAR(t[0].value, 100.0 / 404.0, 1e-12);
  const auto e = admissibility_curve(Kernel::exp(), {10.0});
  EXPECT_NEAR(e[0].value, 100.0 / 202.0, 1e-12);
}

TEST(Admissibility, ExpCurveIsIncreasingAndMatchesClosedForm) {
  std::vector<double> ns;
  for (int n = 1; n <= 64; ++n) ns.push_back(n);
  const auto c = admissibility_curve(Kernel::exp(), ns);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double n2 = ns[i] * ns[i];
    EXPECT_NEAR(c[i].value, n2 / (2.0 * (1.0 + n2)), 1e-8);
    EXPECT_GE(c[i].value, 0.0);
    if (i > 0) EXPECT_GT(c[i].value, c[i - 1].value);
  }
}

TEST(Admissibility, GridRouteAgreesWithClosedForm) {
  AdmissibilityOptions grid;
  grid.force_grid = true;
  std::vector<double> ns{1, 2, 3, 5, 8, 13, 21, 34, 55, 64};
  for (auto* name : {"exp", "texp"}) {
    const auto k = Kernel::builtin(name);
    const auto a = admissibility_curve(k, ns);
    const auto b = admissibility_curve(k, ns, grid);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      EXPECT_NEAR(a[i].value, b[i].value, 1e-4) << name << " n=" << ns[i];
      EXPECT_NEAR(a[i].value, ns[i] * ns[i] * oracle::squared_integral(name, ns[i] * ns[i]), 1e-10);
    }
  }
}

TEST(Admissibility, CbTExp) {
  const auto r = estimate_Cb(Kernel::texp(), 1024, 1e-6);
  EXPECT_NEAR(r.Cb, 0.25, 1e-4);
  EXPECT_TRUE(r.converged);
  ASSERT_EQ(r.curve.size(), 10u);
  EXPECT_EQ(r.curve.front().n, 2.0);
  EXPECT_EQ(r.curve.back().n, 1024.0);
}

TEST(Admissibility, CbExpCarriesPublishedValue) {
  const auto r = estimate_Cb(Kernel::exp(), 1024, 1e-6);
  EXPECT_NEAR(r.Cb, 0.5, 1e-4);
  EXPECT_TRUE(r.converged);
  ASSERT_TRUE(r.published_value.has_value());
  EXPECT_EQ(*r.published_value, 1.0);
  EXPECT_FALSE(r.note.empty());
}

TEST(Admissibility, ShortLadderIsNotConverged) {
  const auto r = estimate_Cb(Kernel::texp(), 8, 1e-6);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.note.empty());
}

TEST(Admissibility, CbStableUnderDtAndTail) {
  AdmissibilityOptions a;
  a.force_grid = true;
  a.dt = 2e-3;
  AdmissibilityOptions b = a;
  b.dt = 1e-3;
  b.tail_tol = 1e-16;
  const double c1 = estimate_Cb(Kernel::texp(), 64, 1e-6, a).Cb;
  const double c2 = estimate_Cb(Kernel::texp(), 64, 1e-6, b).Cb;
  EXPECT_NEAR(c1, c2, 1e-6);
}

TEST(Admissibility, DeterministicUnderThreads) {
  AdmissibilityOptions one;
  one.threads = 1;
  AdmissibilityOptions four;
  four.threads = 4;
  const auto a = estimate_Cb(Kernel::texp(), 256, 1e-6, one);
  const auto b = estimate_Cb(Kernel::texp(), 256, 1e-6, four);
  ASSERT_EQ(a.curve.size(), b.curve.size());
  for (std::size_t i = 0; i < a.curve.size(); ++i) EXPECT_EQ(a.curve[i].value, b.curve[i].value);
  EXPECT_EQ(a.Cb, b.Cb);
}

TEST(Admissibility, TabulatedKernel) {
  std::vector<double> s;
  for (int j = 0; j <= 40000; ++j) s.push_back(std::exp(-j * 1e-3));
  const auto tab = Kernel::tabulated(s, 1e-3, true);
  const auto p = admissibility_point(tab, 3.0);
  EXPECT_NEAR(p.value, 9.0 / 20.0, 1e-5);
}
