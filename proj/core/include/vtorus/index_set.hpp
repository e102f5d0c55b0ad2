#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vtorus {

/// Truncation of the half-lattice Z_s^d to |n|_inf <= n_max.
///
/// Z_s^1 = {1, 2, ...}; Z_s^{d+1} = (Z_s^1 x Z^d) u {(0, m) : m in Z_s^d}.
/// Members are listed with positive first component first (remaining
/// components lexicographic), then the (0, m) block in the order of Z_s^d.
struct IndexSet {
  int d = 1;
  int n_max = 0;
  std::vector<int> coords;  ///< size() * d, row-major

  std::size_t size() const noexcept {
    return d > 0 ? coords.size() / static_cast<std::size_t>(d) : 0;
  }
  std::span<const int> operator[](std::size_t i) const noexcept {
    return {coords.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  long norm2(std::size_t i) const noexcept;
};

IndexSet build_index_set(int d, int n_max);

/// Exhaustive check that the cube minus the origin is the disjoint union of
/// the members and their negatives.
bool check_partition(const IndexSet& set);

long norm2(std::span<const int> n) noexcept;

}  // namespace vtorus
