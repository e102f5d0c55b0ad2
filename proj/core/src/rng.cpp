#include "vtorus/rng.hpp"

#include <cmath>
#include <numbers>

namespace vtorus {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(Philox4x32::Counter& c, const Philox4x32::Key& k) noexcept {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    round(ctr, key);
  }
  return ctr;
}

double uniform_open(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 20) ^ (lo >> 12);
  return (static_cast<double>(bits & ((1ull << 52) - 1)) + 0.5) * 0x1p-52;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint32_t scheme, std::uint32_t path,
                           std::uint32_t slot) noexcept
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32) ^ (scheme * kWeyl0)},
      path_(path),
      slot_(slot) {}

namespace {

struct Pair {
  double cos_lane;
  double sin_lane;
};

// Shift to unsigned so negative positions get their own blocks; each block
// yields one Box-Muller pair.
inline std::uint64_t shifted(std::int64_t position) noexcept {
  return static_cast<std::uint64_t>(position) + (1ull << 63);
}

inline Pair box_muller(const Philox4x32::Key& key, std::uint32_t slot, std::uint32_t path,
                       std::uint64_t blk) noexcept {
  const auto out = Philox4x32::block(
      {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32), slot, path}, key);
  const double u1 = uniform_open(out[0], out[1]);
  const double u2 = uniform_open(out[2], out[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

double NormalStream::operator()(std::int64_t position) const noexcept {
  const std::uint64_t u = shifted(position);
  const Pair p = box_muller(key_, slot_, path_, u >> 1);
  return (u & 1u) ? p.sin_lane : p.cos_lane;
}

void NormalStream::fill(std::int64_t start, std::span<double> out) const noexcept {
  std::size_t i = 0;
  const std::size_t n = out.size();
  if (n == 0) return;
  std::uint64_t u = shifted(start);
  if (u & 1u) {
    out[i++] = box_muller(key_, slot_, path_, u >> 1).sin_lane;
    ++u;
  }
  for (; i + 1 < n; i += 2, u += 2) {
    const Pair p = box_muller(key_, slot_, path_, u >> 1);
    out[i] = p.cos_lane;
    out[i + 1] = p.sin_lane;
  }
  if (i < n) out[i] = box_muller(key_, slot_, path_, u >> 1).cos_lane;
}

}  // namespace vtorus
