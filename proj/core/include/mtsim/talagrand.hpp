#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mtsim/multiplexer.hpp"
#include "mtsim/rng.hpp"

namespace mtsim {

enum class Regime { Middle, Sandwich };
enum class Variant { Yes, No, CwxNo, RelYes, RelNo };

bool variant_is_yes(Variant v);
const char* regime_name(Regime r);
const char* variant_name(Variant v);

struct StrongResponse {
  ActivationResult path;
  enum class Case { Leaf, NoneCase, MultiCase } kind;
  int leaf_bit = -1;          // Case Leaf: h_{u^k}(x)
  bool has_pair_bits = false; // Case Multi with k = levels-1
  int b1 = -1, b2 = -1;       // h_{u^k.a1}(x), h_{u^k.a2}(x)
  int implied_value = -1;     // always equals the membership oracle's f(x)
  std::uint32_t a1() const { return path.a1; }
  std::uint32_t a2() const { return path.a2; }
};

// A concrete function: multiplexer spec + truncation regime + leaf labeling.
// Immutable after construction; all oracles are pure given their RNG stream.
class FunctionInstance {
 public:
  FunctionInstance(MultiplexerSpec spec, Regime regime, Variant variant,
                   const Seed256& leaf_seed,
                   std::optional<int> secret = std::nullopt);

  const MultiplexerSpec& spec() const { return spec_; }
  Regime regime() const { return regime_; }
  Variant variant() const { return variant_; }
  const Seed256& leaf_seed() const { return leaf_seed_; }
  int n() const { return spec_.n(); }
  int levels() const { return spec_.levels(); }

  bool in_layers(int weight) const;

  // Membership oracle: truncation outside the regime's layers, else the
  // multiplexer map (0*/1*/leaf function).
  int eval(const Point& x) const;

  // Stronger oracle: activation path + case evidence. Out-of-layer queries
  // throw OutOfLayerError (callers outside the layers already know f(x)).
  StrongResponse strong_query(const Point& x) const;

  // SAMP oracle (sandwich regime only): uniform over f^{-1}(1) up to the
  // frozen per-instance density estimate for the two sandwich layers; every
  // emitted point is re-checked to satisfy eval = 1.
  Point samp_query(Rng& rng) const;

  // Leaf function value h_u(x).
  int leaf_value(const NodeAddress& leaf, const Point& x) const;

  // --- test-only accessors (attack code must never reference these) ---
  std::optional<int> secret_of() const;
  int leaf_secret_of(const NodeAddress& leaf) const;  // CwxNo only
  bool leaf_is_antidictator(const NodeAddress& leaf) const;  // No/RelNo/CwxNo

  // Fixture support: pin a Yes-variant leaf to a constant.
  void override_leaf_const(const NodeAddress& leaf, int bit);

  // Frozen SAMP construction data (recorded in reports).
  struct SampInfo {
    bool valid = false;
    double density[2] = {0, 0};  // 1-density at layers 3n/4, 3n/4+1
    int samples_per_layer = 0;
    long double ones_estimate = 0;  // |f^{-1}(1)| estimate
  };
  const SampInfo& samp_info() const { return samp_info_; }

 private:
  MultiplexerSpec spec_;
  Regime regime_;
  Variant variant_;
  Seed256 leaf_seed_;
  Prf leaf_prf_;
  int secret_ = 0;  // global secret for No/RelNo, else 0
  std::map<NodeAddress, int> leaf_const_overrides_;

  SampInfo samp_info_;
  std::vector<int> samp_layer_weight_;                 // candidate weights
  std::vector<unsigned __int128> samp_layer_cumsum_;   // cumulative counts
  void init_samp();
};

}  // namespace mtsim
