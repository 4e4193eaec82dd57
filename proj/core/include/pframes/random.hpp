#pragma once

// Counter-based random streams. Every variate is a pure function of
// (seed, domain, stream index, position), so results never depend on the
// order in which work items are scheduled.

#include <array>
#include <cstdint>

namespace pframes {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key) noexcept;
};

/// Separates the uses of one user seed into non-overlapping families.
enum class StreamDomain : std::uint32_t {
  WhiteNoise = 0x57484e31u,
  MarkovPath = 0x4d4b5631u,
  DppDraw = 0x44505031u,
  Generic = 0x47454e31u,
};

/// Maps 64 random bits to a double strictly inside (0, 1) on a 2^-52 grid
/// offset by half a step (53 bits would let the top value round to 1).
inline double bits_to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Standard normal quantile.
double normal_quantile(double u) noexcept;

/// Sequential stream of variates keyed by (seed, domain, index).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept { return bits_to_open_unit(next_u64()); }
  double normal() noexcept { return normal_quantile(uniform()); }

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter block_{};
  int used_ = 2;
};

/// The pair of standard normals at coordinates (2*pair, 2*pair + 1) of white-noise
/// sample `sample`. Addressable directly, no stream state.
std::array<double, 2> white_noise_pair(std::uint64_t seed, std::uint64_t sample,
                                       std::uint32_t pair) noexcept;

}  // namespace pframes
