#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "vtorus/rng.hpp"
#include "vtorus/stats.hpp"

using namespace vtorus;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Rng, PhiloxKnownAnswers) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}),
            (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              K{0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              K{0xa4093822u, 0x299f31d0u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Rng, UniformOpenInterval) {
  EXPECT_GT(uniform_open(0, 0), 0.0);
  EXPECT_LT(uniform_open(0xffffffffu, 0xffffffffu), 1.0);
}

TEST(Rng, StreamsArePureFunctionsOfIndex) {
  const NormalStream a(42, 1, 3, 5);
  const NormalStream b(42, 1, 3, 5);
  for (std::int64_t p : {-1000L, -1L, 0L, 1L, 77L, 1000000L}) EXPECT_EQ(a(p), b(p));
  const NormalStream other_path(42, 1, 4, 5);
  const NormalStream other_slot(42, 1, 3, 6);
  const NormalStream other_seed(43, 1, 3, 5);
  const NormalStream other_scheme(42, 2, 3, 5);
  EXPECT_NE(a(0), other_path(0));
  EXPECT_NE(a(0), other_slot(0));
  EXPECT_NE(a(0), other_seed(0));
  EXPECT_NE(a(0), other_scheme(0));
}

TEST(Rng, FillMatchesPointwise) {
  const NormalStream s(7, 1, 0, 2);
  for (std::int64_t start : {-13L, -1L, 0L, 1L, 2L, 5L}) {
    std::vector<double> out(37);
    s.fill(start, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
      EXPECT_EQ(out[i], s(start + static_cast<std::int64_t>(i))) << start << "+" << i;
    }
  }
}

TEST(Rng, NormalMoments) {
  const NormalStream s(1, 1, 0, 0);
  std::vector<double> x(200000), x2, x4;
  s.fill(-100000, x);
  for (double v : x) {
    x2.push_back(v * v);
    x4.push_back(v * v * v * v);
  }
  const auto m = mean_se(x);
  EXPECT_LT(std::abs(m.mean), 4 * m.se);
  const auto v2 = mean_se(x2);
  EXPECT_LT(std::abs(v2.mean - 1.0), 4 * v2.se);
  const auto v4 = mean_se(x4);
  EXPECT_LT(std::abs(v4.mean - 3.0), 4 * v4.se);
  // neighbouring draws are uncorrelated
  const std::span<const double> all(x);
  EXPECT_LT(std::abs(sample_covariance(all.first(x.size() - 1), all.last(x.size() - 1))),
            4.0 / std::sqrt(static_cast<double>(x.size())));
}
