#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace vtorus {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// Standard normals indexed by (seed, scheme, path, slot, position).
///
/// Every variate is a pure function of its index, so the order in which
/// paths or modes are generated never changes the values. Positions may be
/// negative (the stochastic convolution reaches into the past).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t scheme, std::uint32_t path,
               std::uint32_t slot) noexcept;

  double operator()(std::int64_t position) const noexcept;

  /// out[i] = (*this)(start + i), sharing Box-Muller pairs where possible.
  void fill(std::int64_t start, std::span<double> out) const noexcept;

 private:
  Philox4x32::Key key_;
  std::uint32_t path_;
  std::uint32_t slot_;
};

/// 52-bit uniform in (0, 1) from two 32-bit words; the top value stays below 1.
double uniform_open(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace vtorus
