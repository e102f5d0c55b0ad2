#include <gtest/gtest.h>

#include <algorithm>

#include "vtorus/error.hpp"
#include "vtorus/uniqueness.hpp"

using namespace vtorus;

TEST(Uniqueness, AchievableNorms) {
  EXPECT_EQ(achievable_norms(1, 3), (std::vector<long>{0, 1, 4, 9}));
  EXPECT_EQ(achievable_norms(2, 2), (std::vector<long>{0, 1, 2, 4, 5, 8}));
  const auto three = achievable_norms(3, 1);
  EXPECT_EQ(three, (std::vector<long>{0, 1, 2, 3}));
  EXPECT_THROW(achievable_norms(0, 1), InvalidArgument);
}

TEST(Uniqueness, ExpAndTExpHold) {
  for (auto* name : {"exp", "texp"}) {
    const auto r = check_uniqueness_condition(Kernel::builtin(name), 64, 16, 1e-9);
    EXPECT_TRUE(r.holds) << name;
    EXPECT_TRUE(r.violations.empty());
    EXPECT_TRUE(r.asymptotically_clear);
    EXPECT_TRUE(r.closed_form);
  }
  // |1 + ik + m| >= 1 with equality at k = 0, m = 0
  const auto e = check_uniqueness_condition(Kernel::exp(), 64, 16, 1e-9);
  EXPECT_NEAR(e.min_distance, 1.0, 1e-15);
  EXPECT_EQ(e.argmin_k, 0);
  EXPECT_EQ(e.argmin_n_abs2, 0);
}

TEST(Uniqueness, OneViolatesAtOrigin) {
  const auto r = check_uniqueness_condition(Kernel::one(), 8, 4, 1e-9);
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].k, 0);
  EXPECT_EQ(r.violations[0].n_abs2, 0);
}

TEST(Uniqueness, LinearViolatesOnTheDiagonal) {
  // (ik)^2 + |n|^2 = 0 exactly when |k| = |n|
  const auto r = check_uniqueness_condition(Kernel::linear(), 5, 3, 1e-9);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.violations.size(), 7u);
  for (const auto& v : r.violations) EXPECT_EQ(static_cast<long>(v.k) * v.k, v.n_abs2);
}

TEST(Uniqueness, MonotoneInTolerance) {
  std::size_t prev = 0;
  for (double tol : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const auto r = check_uniqueness_condition(Kernel::exp(), 8, 4, tol);
    EXPECT_GE(r.violations.size(), prev);
    prev = r.violations.size();
  }
  EXPECT_GT(prev, 0u);
}

TEST(Uniqueness, NumericRouteAgrees) {
  UniquenessOptions numeric;
  numeric.closed_form = false;
  for (auto* name : {"exp", "texp"}) {
    const auto a = check_uniqueness_condition(Kernel::builtin(name), 16, 4, 1e-9);
    const auto b = check_uniqueness_condition(Kernel::builtin(name), 16, 4, 1e-9, numeric);
    EXPECT_FALSE(b.closed_form);
    EXPECT_FALSE(b.asymptotically_clear);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_NEAR(a.min_distance, b.min_distance, 1e-6);
    EXPECT_EQ(a.argmin_k, b.argmin_k);
  }
}

TEST(Uniqueness, DimensionWidensTheNormSet) {
  UniquenessOptions o;
  o.d = 2;
  const auto r = check_uniqueness_condition(Kernel::texp(), 4, 2, 1e-9, o);
  EXPECT_EQ(r.d, 2);
  EXPECT_EQ(r.n_abs2_values, achievable_norms(2, 2));
  EXPECT_THROW(check_uniqueness_condition(Kernel::exp(), -1, 2, 1e-9), InvalidArgument);
}
