#include "vtorus/index_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "vtorus/error.hpp"

namespace vtorus {

long norm2(std::span<const int> n) noexcept {
  long s = 0;
  for (int v : n) s += static_cast<long>(v) * v;
  return s;
}

long IndexSet::norm2(std::size_t i) const noexcept { return vtorus::norm2((*this)[i]); }

namespace {

void append_half(int d, int n_max, std::vector<int>& out) {
  if (d == 1) {
    for (int k = 1; k <= n_max; ++k) out.push_back(k);
    return;
  }
  // first component in 1..n_max, the other d-1 over the full cube
  std::vector<int> rest(static_cast<std::size_t>(d - 1), -n_max);
  for (int first = 1; first <= n_max; ++first) {
    std::fill(rest.begin(), rest.end(), -n_max);
    for (;;) {
      out.push_back(first);
      out.insert(out.end(), rest.begin(), rest.end());
      int pos = d - 2;
      while (pos >= 0 && rest[static_cast<std::size_t>(pos)] == n_max) {
        rest[static_cast<std::size_t>(pos)] = -n_max;
        --pos;
      }
      if (pos < 0) break;
      ++rest[static_cast<std::size_t>(pos)];
    }
  }
  std::vector<int> lower;
  append_half(d - 1, n_max, lower);
  for (std::size_t i = 0; i < lower.size(); i += static_cast<std::size_t>(d - 1)) {
    out.push_back(0);
    out.insert(out.end(), lower.begin() + static_cast<long>(i),
               lower.begin() + static_cast<long>(i) + (d - 1));
  }
}

}  // namespace

IndexSet build_index_set(int d, int n_max) {
  if (d < 1) throw InvalidArgument("index set: d must be >= 1");
  if (n_max < 0) throw InvalidArgument("index set: n_max must be >= 0");
  IndexSet set;
  set.d = d;
  set.n_max = n_max;
  if (n_max > 0) append_half(d, n_max, set.coords);
  return set;
}

bool check_partition(const IndexSet& set) {
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto m = set[i];
    std::vector<int> p(m.begin(), m.end());
    std::vector<int> q(p);
    bool zero = true;
    for (auto& v : q) {
      if (v != 0) zero = false;
      if (std::abs(v) > set.n_max) return false;
      v = -v;
    }
    if (zero) return false;
    if (!seen.insert(p).second) return false;
    if (!seen.insert(q).second) return false;
  }
  long cube = 1;
  for (int k = 0; k < set.d; ++k) cube *= 2L * set.n_max + 1;
  return static_cast<long>(seen.size()) == cube - 1;
}

}  // namespace vtorus
