#include <doctest.h>
#include <sodium.h>

#include <cstring>

#include "mtsim/prf.hpp"
#include "mtsim/rng.hpp"

using namespace mtsim;

TEST_CASE("siphash24 matches libsodium crypto_shorthash") {
  REQUIRE(sodium_init() >= 0);
  Rng rng(0xfeedface);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint8_t key[16];
    for (auto& b : key) b = static_cast<std::uint8_t>(rng.next());
    const std::size_t len = static_cast<std::size_t>(rng.below(64));
    std::uint8_t msg[64];
    for (std::size_t i = 0; i < len; ++i)
      msg[i] = static_cast<std::uint8_t>(rng.next());

    std::uint8_t out[crypto_shorthash_BYTES];
    crypto_shorthash(out, msg, len, key);
    std::uint64_t ref = 0;
    for (int i = 7; i >= 0; --i) ref = (ref << 8) | out[i];

    CHECK(siphash24(key, msg, len) == ref);
  }
}

TEST_CASE("Prf is deterministic and purpose-separated") {
  const Seed256 seed = seed_from_u64(42);
  Prf a(seed, "edge"), b(seed, "edge"), c(seed, "leaf");
  const std::uint8_t msg[] = {1, 2, 3};
  CHECK(a.u64(msg, 3) == b.u64(msg, 3));
  CHECK(a.u64(msg, 3) != c.u64(msg, 3));

  // Both seed halves matter.
  Seed256 seed2 = seed;
  seed2[20] ^= 1;  // second half
  Prf d(seed2, "edge");
  CHECK(a.u64(msg, 3) != d.u64(msg, 3));
}

TEST_CASE("u64_path is prefix-free across path lengths") {
  const Seed256 seed = seed_from_u64(7);
  Prf prf(seed, "edge");
  // path (1,2) index 3 must differ from path (1) index anything that could
  // collide under naive concatenation.
  const std::uint32_t p12[] = {1, 2};
  const std::uint32_t p1[] = {1};
  CHECK(prf.u64_path(1, p12, 2, 3) != prf.u64_path(1, p1, 1, 3));
  CHECK(prf.u64_path(1, p12, 2, 3) != prf.u64_path(2, p12, 2, 3));
}

TEST_CASE("uniform_coord stays in [1, n]") {
  const Seed256 seed = seed_from_u64(9);
  Prf prf(seed, "edge");
  for (std::uint32_t idx = 0; idx < 1000; ++idx) {
    const std::uint32_t path[] = {idx};
    const std::uint32_t v = prf.uniform_coord(1, path, 1, idx, 17);
    CHECK(v >= 1);
    CHECK(v <= 17);
  }
}
