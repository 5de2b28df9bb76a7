#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "mtsim/common.hpp"
#include "mtsim/prf.hpp"

namespace mtsim {

// Deterministic RNG stream. mt19937_64 is fully specified by the standard,
// and all bounded draws go through masked rejection below (never
// std::uniform_int_distribution, whose algorithm is implementation-defined),
// so identical seeds yield identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound). Masked rejection: unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ContractError("Rng::below(0)");
    if (bound == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0};
    mask >>= __builtin_clzll(bound - 1 | 1);
    for (;;) {
      const std::uint64_t v = eng_() & mask;
      if (v < bound) return v;
    }
  }

  bool bit() { return (eng_() >> 63) != 0; }

  // Derive an independent child stream (for per-trial / per-branch use).
  Rng split() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ULL); }

  // Choose k distinct values from [0, n) by partial Fisher-Yates;
  // integer-only, deterministic for a fixed stream state.
  std::vector<std::uint32_t> choose(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw ContractError("Rng::choose k > n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t j =
          i + static_cast<std::uint32_t>(below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

  // Fisher-Yates shuffle of an index vector.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Per-trial seed derivation: seed_i = PRF(master, trial_index). Disjoint,
// replayable streams regardless of thread scheduling.
inline std::uint64_t derive_trial_seed(const Seed256& master,
                                       std::uint64_t trial_index) {
  Prf prf(master, "trial-seed");
  std::uint8_t msg[8];
  for (int i = 0; i < 8; ++i)
    msg[i] = static_cast<std::uint8_t>(trial_index >> (8 * i));
  return prf.u64(msg, 8);
}

}  // namespace mtsim
