#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace dpclust {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// Stream layout: the 64-bit key holds the user seed; the 128-bit counter is
// split into a 64-bit block index (low half, incremented per block) and a
// 64-bit stream id (high half). Distinct (seed, stream) pairs give
// independent sequences, which is how per-path sub-seeds are derived: path p
// of a simulation suite draws from stream p, and its initial value from
// stream p | 2^63. Each 128-bit block yields two 64-bit outputs.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        block_(0),
        stream_(stream) {}

  /// One keyed Philox4x32-10 block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

  std::uint64_t next_u64() {
    if (buffered_ == 0) refill();
    return buffer_[--buffered_];
  }

  /// Uniform draw strictly inside (0, 1).
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  static constexpr double kPi = 3.14159265358979323846;

  static std::array<std::uint32_t, 4> single_round(
      const std::array<std::uint32_t, 4>& c,
      const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
            static_cast<std::uint32_t>(p0)};
  }

  void refill() {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    const auto out = block(ctr, key_);
    buffer_[1] = static_cast<std::uint64_t>(out[0]) |
                 (static_cast<std::uint64_t>(out[1]) << 32);
    buffer_[0] = static_cast<std::uint64_t>(out[2]) |
                 (static_cast<std::uint64_t>(out[3]) << 32);
    buffered_ = 2;
    ++block_;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_;
  std::uint64_t stream_;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Stream id used for auxiliary draws (initial values) of path `index`.
inline std::uint64_t x0_stream(std::uint64_t index) {
  return index | (std::uint64_t{1} << 63);
}

}  // namespace dpclust
