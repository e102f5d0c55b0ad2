#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "vtorus/index_set.hpp"

using namespace vtorus;

namespace {

std::vector<std::vector<int>> members(const IndexSet& s) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(s[i].begin(), s[i].end());
  return out;
}

}  // namespace

TEST(IndexSet, OneDimensional) {
  EXPECT_EQ(members(build_index_set(1, 3)), (std::vector<std::vector<int>>{{1}, {2}, {3}}));
}

TEST(IndexSet, TwoDimensionalUnitCube) {
  const auto m = members(build_index_set(2, 1));
  const std::set<std::vector<int>> got(m.begin(), m.end());
  const std::set<std::vector<int>> want{{1, -1}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(m.size(), 4u);
}

TEST(IndexSet, EmptyAtZeroTruncation) {
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(build_index_set(d, 0).size(), 0u);
}

TEST(IndexSet, PartitionExhaustive) {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 8; ++n) {
      const auto s = build_index_set(d, n);
      EXPECT_TRUE(check_partition(s)) << "d=" << d << " n_max=" << n;
      // independent check against the full cube
      std::set<std::vector<int>> seen;
      for (const auto& m : members(s)) {
        std::vector<int> neg(m);
        for (auto& v : neg) v = -v;
        EXPECT_TRUE(seen.insert(m).second);
        EXPECT_TRUE(seen.insert(neg).second);
      }
      const auto cube = oracle::cube(d, n);
      EXPECT_EQ(seen.size() + 1, cube.size());
      for (const auto& p : cube) {
        const bool zero = std::all_of(p.begin(), p.end(), [](int v) { return v == 0; });
        EXPECT_EQ(seen.count(p) == 1, !zero);
      }
    }
  }
}

TEST(IndexSet, BrokenSetFailsPartition) {
  auto s = build_index_set(2, 2);
  s.coords[0] = -s.coords[0];
  EXPECT_FALSE(check_partition(s));
}

TEST(IndexSet, Norms) {
  const auto s = build_index_set(3, 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    long want = 0;
    for (int v : s[i]) want += v * v;
    EXPECT_EQ(s.norm2(i), want);
    EXPECT_EQ(norm2(s[i]), want);
  }
}
