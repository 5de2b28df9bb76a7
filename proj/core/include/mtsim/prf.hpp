#pragma once
#include <cstdint>
#include <cstring>
#include <vector>

#include "mtsim/common.hpp"

namespace mtsim {

// SipHash-2-4 with a 128-bit key. Reference: Aumasson & Bernstein,
// "SipHash: a fast short-input PRF". Implemented inline because the hot
// loops make ~10^8 calls on short messages and call overhead dominates.
std::uint64_t siphash24(const std::uint8_t key[16], const std::uint8_t* data,
                        std::size_t len);

// Keyed PRF with domain separation, driven by a 256-bit seed.
// Subkeys for distinct purposes are derived by hashing a purpose tag
// together with the second seed half under the first half, so both seed
// halves contribute to every output.
class Prf {
 public:
  Prf(const Seed256& seed, const char* purpose);

  // PRF over an arbitrary message.
  std::uint64_t u64(const std::uint8_t* msg, std::size_t len) const;

  // PRF over a (tag, path, index) encoding: 1 tag byte, 1 length byte,
  // fixed-width 8-byte big-endian path components (prefix-free), then a
  // 4-byte big-endian index. Used for edge literals and leaf labels.
  std::uint64_t u64_path(std::uint8_t tag, const std::uint32_t* path,
                         std::size_t path_len, std::uint32_t index) const;

  // Uniform value in [1, n] via 64-bit reduction (bias < 2^-57 for n <= 2^6..;
  // recorded as negligible for all supported n).
  std::uint32_t uniform_coord(std::uint8_t tag, const std::uint32_t* path,
                              std::size_t path_len, std::uint32_t index,
                              std::uint32_t n) const {
    return static_cast<std::uint32_t>(
               u64_path(tag, path, path_len, index) % n) + 1;
  }

  const std::uint8_t* key() const { return key_; }

 private:
  std::uint8_t key_[16];
};

}  // namespace mtsim
