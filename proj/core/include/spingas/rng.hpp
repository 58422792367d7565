#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace spingas {

// ---- Philox4x64-10 counter-based generator ----
//
// Keyed bijection from a 256-bit counter to 256 bits of output; streams are
// addressed, not iterated, so any (trajectory, block) combination can be
// generated independently and in parallel with bitwise-identical results.

namespace philox {

inline constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(prod >> 64);
  lo = static_cast<std::uint64_t>(prod);
}

inline std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                          std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, ctr[0], hi0, lo0);
    mulhilo(kMult1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

} // namespace philox

// Per-trajectory random stream: key = (seed, golden-ratio constant),
// counter = (block index, trajectory index, 0, 0).  Serial and parallel
// ensemble runs draw identical numbers because the stream address depends
// only on (seed, trajectory).
class TrajectoryRng {
 public:
  TrajectoryRng(std::uint64_t seed, std::uint64_t trajectory)
      : key_{seed, philox::kWeyl0}, traj_(trajectory) {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buf_ = philox::block({block_++, traj_, 0, 0}, key_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exponential waiting time; rate > 0.  1 - u lies in (0, 1], so the log is
  // always finite.
  double next_exponential(double rate) {
    return -std::log1p(-next_double()) / rate;
  }

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t traj_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
};

} // namespace spingas
