#pragma once

#include <array>
#include <cstdint>

namespace confcert {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// https://www.thesalmons.org/john/random123/papers/random123sc11.pdf

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += w0;
    key[1] += w1;
  }
  return ctr;
}

/// Independent uniform stream for one walker, keyed by (seed, stream index).
///
/// Each block of the counter yields two doubles with 53 random bits in [0, 1).
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  double uniform() {
    if (used_ == 2) refill();
    const std::uint32_t a = block_[2 * used_], b = block_[2 * used_ + 1];
    ++used_;
    const std::uint64_t bits = (static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6);
    return static_cast<double>(bits) * 0x1.0p-53;
  }

 private:
  void refill() {
    block_ = philox4x32_10({block_index_, stream_lo_, stream_hi_, 0u}, key_);
    ++block_index_;
    used_ = 0;
  }

  PhiloxKey key_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint32_t block_index_ = 0;
  PhiloxCounter block_{};
  int used_ = 2;
};

}  // namespace confcert
