#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mtsim {

// 256-bit seed used for tree structure and leaf labelings.
using Seed256 = std::array<std::uint8_t, 32>;

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown when a strong-oracle query lies outside the regime's layers.
// Distinct type so tester misuse surfaces loudly.
struct OutOfLayerError : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown inside attack drivers when the query budget would be exceeded.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string seed_to_hex(const Seed256& s);
Seed256 seed_from_hex(const std::string& hex);

// Convenience: expand a small integer into a full seed (for tests/CLI).
Seed256 seed_from_u64(std::uint64_t v);

// Integer floor square root.
inline int isqrt(int n) {
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace mtsim
