#include "mtsim/talagrand.hpp"

#include <cmath>

namespace mtsim {

namespace {
constexpr std::uint8_t kTagLeafConst = 0x02;
constexpr std::uint8_t kTagLeafFlag = 0x03;
constexpr std::uint8_t kTagLeafSecret = 0x04;
constexpr std::uint8_t kTagGlobalSecret = 0x05;
constexpr std::uint8_t kTagSampStream = 0x06;
}  // namespace

bool variant_is_yes(Variant v) {
  return v == Variant::Yes || v == Variant::RelYes;
}

const char* regime_name(Regime r) {
  return r == Regime::Middle ? "middle" : "sandwich";
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Yes: return "yes";
    case Variant::No: return "no";
    case Variant::CwxNo: return "cwx-no";
    case Variant::RelYes: return "rel-yes";
    case Variant::RelNo: return "rel-no";
  }
  return "?";
}

FunctionInstance::FunctionInstance(MultiplexerSpec spec, Regime regime,
                                   Variant variant, const Seed256& leaf_seed,
                                   std::optional<int> secret)
    : spec_(std::move(spec)),
      regime_(regime),
      variant_(variant),
      leaf_seed_(leaf_seed),
      leaf_prf_(leaf_seed, "leaf") {
  const bool rel = variant_ == Variant::RelYes || variant_ == Variant::RelNo;
  if (rel != (regime_ == Regime::Sandwich))
    throw ContractError("Rel variants pair with the sandwich regime");
  if (regime_ == Regime::Sandwich && spec_.n() % 4 != 0)
    throw ContractError("sandwich regime needs n divisible by 4");
  if (variant_ == Variant::No || variant_ == Variant::RelNo) {
    if (secret) {
      if (*secret < 1 || *secret > spec_.n())
        throw ContractError("secret out of [n]");
      secret_ = *secret;
    } else {
      secret_ = static_cast<int>(
          leaf_prf_.u64_path(kTagGlobalSecret, nullptr, 0, 0) %
          static_cast<std::uint64_t>(spec_.n())) + 1;
    }
  } else if (secret) {
    throw ContractError("secret only applies to No/RelNo variants");
  }
  if (regime_ == Regime::Sandwich) init_samp();
}

bool FunctionInstance::in_layers(int w) const {
  return regime_ == Regime::Middle ? in_middle_layers(w, spec_.n())
                                   : in_sandwich_layers(w, spec_.n());
}

int FunctionInstance::leaf_value(const NodeAddress& leaf,
                                 const Point& x) const {
  if (leaf.level() != static_cast<std::size_t>(spec_.levels()))
    throw ContractError("leaf_value on a non-leaf");
  switch (variant_) {
    case Variant::Yes:
    case Variant::RelYes: {
      auto it = leaf_const_overrides_.find(leaf);
      if (it != leaf_const_overrides_.end()) return it->second;
      return static_cast<int>(leaf_prf_.u64_path(kTagLeafConst,
                                                 leaf.comps.data(),
                                                 leaf.comps.size(), 0) & 1);
    }
    case Variant::No:
    case Variant::RelNo: {
      const bool anti = leaf_prf_.u64_path(kTagLeafFlag, leaf.comps.data(),
                                           leaf.comps.size(), 0) & 1;
      const bool b = x.bit(static_cast<std::uint32_t>(secret_));
      return anti ? !b : b;
    }
    case Variant::CwxNo: {
      const int su = leaf_secret_of(leaf);
      return !x.bit(static_cast<std::uint32_t>(su));
    }
  }
  return 0;
}

int FunctionInstance::eval(const Point& x) const {
  if (x.n() != spec_.n()) throw ContractError("point dimension mismatch");
  const int w = x.weight();
  const int n = spec_.n();
  if (regime_ == Regime::Middle) {
    const int r = isqrt(n);
    if (2 * w > n + 2 * r) return 1;
    if (2 * w < n - 2 * r) return 0;
  } else {
    const int lo = 3 * n / 4;
    if (w > lo + 1) return 1;
    if (w < lo) return 0;
  }
  const GammaResult g = gamma(spec_, x);
  switch (g.kind) {
    case GammaResult::Kind::Star0: return 0;
    case GammaResult::Kind::Star1: return 1;
    case GammaResult::Kind::Leaf: return leaf_value(g.leaf, x);
  }
  return 0;
}

StrongResponse FunctionInstance::strong_query(const Point& x) const {
  if (x.n() != spec_.n()) throw ContractError("point dimension mismatch");
  if (!in_layers(x.weight()))
    throw OutOfLayerError("strong query outside the regime's layers");
  StrongResponse r;
  r.path = activation_path(spec_, x);
  const std::size_t k = r.path.k();
  switch (r.path.terminal) {
    case Terminal::Leaf:
      r.kind = StrongResponse::Case::Leaf;
      r.leaf_bit = leaf_value(r.path.end(), x);
      r.implied_value = r.leaf_bit;
      break;
    case Terminal::NoneActivated:
      r.kind = StrongResponse::Case::NoneCase;
      r.implied_value = (k % 2 == 0) ? 0 : 1;
      break;
    case Terminal::MultiActivated:
      r.kind = StrongResponse::Case::MultiCase;
      r.implied_value = (k % 2 == 0) ? 1 : 0;
      if (k == static_cast<std::size_t>(spec_.levels()) - 1) {
        r.has_pair_bits = true;
        r.b1 = leaf_value(r.path.end().child(r.path.a1), x);
        r.b2 = leaf_value(r.path.end().child(r.path.a2), x);
      }
      break;
  }
  return r;
}

void FunctionInstance::init_samp() {
  const int n = spec_.n();
  if (n > 64) return;  // SAMP supported for enumerable-count dimensions
  const int lo = 3 * n / 4;
  samp_info_.samples_per_layer = 2048;

  // One-time stratified density estimate at the two sandwich layers,
  // frozen for the instance lifetime (deterministic PRF-derived stream).
  Rng est(leaf_prf_.u64_path(kTagSampStream, nullptr, 0, 0));
  for (int j = 0; j < 2; ++j) {
    int ones = 0;
    for (int t = 0; t < samp_info_.samples_per_layer; ++t) {
      const Point x = sample_layer(n, lo + j, est);
      ones += eval(x);
    }
    samp_info_.density[j] =
        static_cast<double>(ones) / samp_info_.samples_per_layer;
  }

  unsigned __int128 cum = 0;
  long double total = 0;
  for (int w = lo; w <= n; ++w) {
    const unsigned __int128 layer = binomial(n, w);
    unsigned __int128 cnt;
    if (w >= lo + 2) {
      cnt = layer;
    } else {
      const long double est_cnt =
          samp_info_.density[w - lo] * static_cast<long double>(layer);
      cnt = static_cast<unsigned __int128>(est_cnt + 0.5L);
    }
    if (cnt == 0) continue;
    cum += cnt;
    total += static_cast<long double>(cnt);
    samp_layer_weight_.push_back(w);
    samp_layer_cumsum_.push_back(cum);
  }
  samp_info_.ones_estimate = total;
  samp_info_.valid = true;
}

Point FunctionInstance::samp_query(Rng& rng) const {
  if (regime_ != Regime::Sandwich)
    throw ContractError("samp_query requires the sandwich regime");
  if (!samp_info_.valid || samp_layer_cumsum_.empty())
    throw ContractError("SAMP unavailable for this instance");
  const unsigned __int128 total = samp_layer_cumsum_.back();
  const int lo = 3 * spec_.n() / 4;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    // 128-bit uniform below total (rejection on the high chunk).
    unsigned __int128 r;
    if (total <= ~std::uint64_t{0}) {
      r = rng.below(static_cast<std::uint64_t>(total));
    } else {
      const unsigned __int128 hi = total >> 64;
      for (;;) {
        unsigned __int128 v =
            (static_cast<unsigned __int128>(rng.below(
                 static_cast<std::uint64_t>(hi) + 1))
             << 64) |
            rng.next();
        if (v < total) { r = v; break; }
      }
    }
    std::size_t li = 0;
    while (samp_layer_cumsum_[li] <= r) ++li;
    const int w = samp_layer_weight_[li];
    const Point x = sample_layer(spec_.n(), w, rng);
    if (w >= lo + 2) return x;        // truncation forces f(x)=1
    if (eval(x) == 1) return x;        // rejection pass inside the sandwich
  }
  throw ContractError("samp_query rejection pass failed to converge");
}

std::optional<int> FunctionInstance::secret_of() const {
  if (variant_ == Variant::No || variant_ == Variant::RelNo) return secret_;
  return std::nullopt;
}

int FunctionInstance::leaf_secret_of(const NodeAddress& leaf) const {
  if (variant_ != Variant::CwxNo)
    throw ContractError("per-leaf secrets exist only for CwxNo");
  return static_cast<int>(
      leaf_prf_.u64_path(kTagLeafSecret, leaf.comps.data(),
                         leaf.comps.size(), 0) %
      static_cast<std::uint64_t>(spec_.n())) + 1;
}

bool FunctionInstance::leaf_is_antidictator(const NodeAddress& leaf) const {
  switch (variant_) {
    case Variant::CwxNo: return true;
    case Variant::No:
    case Variant::RelNo:
      return leaf_prf_.u64_path(kTagLeafFlag, leaf.comps.data(),
                                leaf.comps.size(), 0) & 1;
    default:
      throw ContractError("no dictator structure for Yes variants");
  }
}

void FunctionInstance::override_leaf_const(const NodeAddress& leaf, int bit) {
  if (!variant_is_yes(variant_))
    throw ContractError("leaf constants exist only for Yes variants");
  leaf_const_overrides_[leaf] = bit & 1;
}

}  // namespace mtsim
