#include <doctest.h>

#include <array>
#include <cstdint>

#include "spingas/rng.hpp"

using namespace spingas;

namespace {

// Known-answer vectors for the keyed counter block function: two consecutive
// counter blocks per key (the block index lives in the first counter word,
// which wraps without carry), eight outputs.  The all-ones row is the
// published reference vector for the 4x64-10 bijection.
struct Kat {
  std::array<std::uint64_t, 2> key;
  std::array<std::uint64_t, 4> ctr;
  std::array<std::uint64_t, 8> out;
};

const Kat kKats[] = {
    {{0, 0},
     {0, 0, 0, 0},
     {0x16554d9eca36314cull, 0xdb20fe9d672d0fdcull, 0xd7e772cee186176bull,
      0x7e68b68aec7ba23bull, 0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull,
      0x1c8667a55d902e79ull, 0x907d7a052fd5b4dcull}},
    {{0x123456789abcdef0ull, 0x0fedcba987654321ull},
     {0, 0, 0, 0},
     {0x36f305568021522eull, 0x08e3ce60733a00bfull, 0x0bc0bf045e665247ull,
      0x6c0c9505aca6d139ull, 0x4aef8f263af04061ull, 0x4538a4a9af13af9aull,
      0x40800e0e2ff4269full, 0x96d3599b96694888ull}},
    {{0x2aull, 0},
     {7, 3, 0, 0},
     {0x38be744f01e17b9dull, 0xc75d7c8ffe4a0665ull, 0x17b8fe123ff3e589ull,
      0x90f1132dd4684c90ull, 0xa8dcdfb0ad1fac55ull, 0x5c9d35260a7bb0a6ull,
      0xab90dcb148929aacull, 0x43acc3fcec514733ull}},
    {{0xffffffffffffffffull, 0xffffffffffffffffull},
     {0xffffffffffffffffull, 0xffffffffffffffffull, 0xffffffffffffffffull,
      0xffffffffffffffffull},
     {0x87b092c3013fe90bull, 0x438c3c67be8d0224ull, 0x9cc7d7c69cd777b6ull,
      0xa09caebf594f0ba0ull, 0xaefc6005647a0716ull, 0xe6757b183bccf3beull,
      0xdf79a3af3980e3aaull, 0xf5bab204669b81c1ull}},
};

}  // namespace

TEST_CASE("rng: block function known answers") {
  for (const auto& kat : kKats) {
    auto first = philox::block(kat.ctr, kat.key);
    auto next_ctr = kat.ctr;
    next_ctr[0] += 1;  // blocks advance in the first counter word
    auto second = philox::block(next_ctr, kat.key);
    for (int i = 0; i < 4; ++i) {
      CHECK(first[i] == kat.out[i]);
      CHECK(second[i] == kat.out[4 + i]);
    }
  }
}

TEST_CASE("rng: trajectory streams are addressed, not iterated") {
  // The stream for (seed, trajectory) starts at block 0 with the key
  // (seed, Weyl constant); draws must match the raw block function.
  const std::uint64_t seed = 0xdeadbeefcafef00dull;
  const std::uint64_t traj = 17;
  TrajectoryRng rng(seed, traj);
  auto want = philox::block({0, traj, 0, 0}, {seed, philox::kWeyl0});
  for (int i = 0; i < 4; ++i) CHECK(rng.next_u64() == want[i]);
  auto want2 = philox::block({1, traj, 0, 0}, {seed, philox::kWeyl0});
  CHECK(rng.next_u64() == want2[0]);
}

TEST_CASE("rng: derived draws") {
  TrajectoryRng a(42, 7);
  TrajectoryRng b(42, 7);
  for (int i = 0; i < 100; ++i) {
    double u = a.next_double();
    CHECK(u == b.next_double());  // same address, same stream
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  TrajectoryRng c(42, 8);
  bool differs = false;
  TrajectoryRng a2(42, 7);
  for (int i = 0; i < 8; ++i) differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);

  TrajectoryRng d(42, 9);
  for (int i = 0; i < 100; ++i) {
    double w = d.next_exponential(0.5);
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
  }

  // 53-bit mantissa construction.
  TrajectoryRng e1(1, 2);
  TrajectoryRng e2(1, 2);
  std::uint64_t raw = e1.next_u64();
  CHECK(e2.next_double() == static_cast<double>(raw >> 11) * 0x1.0p-53);
}
