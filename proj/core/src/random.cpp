#include "pframes/random.hpp"

#include <gsl/gsl_cdf.h>

namespace pframes {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline Philox4x32::Counter round(const Philox4x32::Counter& c, const Philox4x32::Key& k) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Philox4x32::Key split(std::uint64_t seed) noexcept {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) noexcept {
  return static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
}

}  // namespace

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key) noexcept {
  ctr = round(ctr, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    ctr = round(ctr, key);
  }
  return ctr;
}

double normal_quantile(double u) noexcept { return gsl_cdf_ugaussian_Pinv(u); }

CounterStream::CounterStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index) noexcept
    : key_(split(seed)),
      ctr_{0u, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
           static_cast<std::uint32_t>(domain)} {}

std::uint64_t CounterStream::next_u64() noexcept {
  if (used_ == 2) {
    block_ = Philox4x32::apply(ctr_, key_);
    ++ctr_[0];
    used_ = 0;
  }
  const int i = used_++;
  return join(block_[2 * i], block_[2 * i + 1]);
}

std::uint64_t CounterStream::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection; unbiased.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::array<double, 2> white_noise_pair(std::uint64_t seed, std::uint64_t sample,
                                       std::uint32_t pair) noexcept {
  const Philox4x32::Counter ctr{pair, static_cast<std::uint32_t>(sample),
                                static_cast<std::uint32_t>(sample >> 32),
                                static_cast<std::uint32_t>(StreamDomain::WhiteNoise)};
  const auto out = Philox4x32::apply(ctr, split(seed));
  return {normal_quantile(bits_to_open_unit(join(out[0], out[1]))),
          normal_quantile(bits_to_open_unit(join(out[2], out[3])))};
}

}  // namespace pframes
