#include "mtsim/multiplexer.hpp"

#include <cmath>

namespace mtsim {

namespace {
constexpr std::uint8_t kTagEdge = 0x01;
}

std::string NodeAddress::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(comps[i]);
  }
  s += ')';
  return s;
}

MultiplexerSpec::MultiplexerSpec(int n, int levels,
                                 std::vector<std::uint64_t> arity_per_level,
                                 int term_size, int clause_size,
                                 const Seed256& master_seed)
    : n_(n),
      levels_(levels),
      arity_(std::move(arity_per_level)),
      term_size_(term_size),
      clause_size_(clause_size),
      master_seed_(master_seed),
      edge_prf_(master_seed, "edge") {
  if (n_ < 4) throw ContractError("n < 4: middle layers degenerate");
  if (levels_ < 1) throw ContractError("levels must be >= 1");
  if (arity_.size() != static_cast<std::size_t>(levels_))
    throw ContractError("arity_per_level must have one entry per level");
  for (std::uint64_t a : arity_)
    if (a < 2) throw ContractError("arities must be >= 2");
  if (term_size_ < 1 || clause_size_ < 1)
    throw ContractError("literal sizes must be >= 1");
}

MultiplexerSpec MultiplexerSpec::middle_default(int n, int levels,
                                                const Seed256& master_seed) {
  const int r = isqrt(n);
  if (r * r != n)
    throw ContractError("paper-default parameters need integral sqrt(n)");
  // Even level counts are the default host; odd counts (three-alternation
  // attack hosts) share the same arity schedule.
  if (r > 62) throw ContractError("arity 2^sqrt(n) too large");
  const std::uint64_t N = std::uint64_t{1} << r;
  return MultiplexerSpec(n, levels,
                         std::vector<std::uint64_t>(levels, N), r, r,
                         master_seed);
}

void MultiplexerSpec::override_edge(const NodeAddress& child,
                                    LiteralList lits) {
  if (child.is_root()) throw ContractError("cannot override the root");
  const int s = literal_size(child.level());
  if (lits.size() != static_cast<std::size_t>(s))
    throw ContractError("override literal list has wrong size");
  for (std::uint32_t i : lits)
    if (i < 1 || static_cast<int>(i) > n_)
      throw ContractError("override literal out of [n]");
  overrides_[child] = std::move(lits);
}

LiteralList derive_literals(const MultiplexerSpec& spec, const EdgeAddress& e) {
  if (e.child.is_root() ||
      e.level() > static_cast<std::size_t>(spec.levels()))
    throw ContractError("invalid edge address");
  for (std::size_t i = 0; i < e.child.comps.size(); ++i)
    if (e.child.comps[i] < 1 ||
        e.child.comps[i] > spec.arity_at_level(i + 1))
      throw ContractError("edge component out of arity range");
  if (spec.has_overrides()) {
    auto it = spec.overrides().find(e.child);
    if (it != spec.overrides().end()) return it->second;
  }
  const int s = spec.literal_size(e.level());
  LiteralList lits(s);
  for (int idx = 0; idx < s; ++idx)
    lits[idx] = spec.edge_prf().uniform_coord(
        kTagEdge, e.child.comps.data(), e.child.comps.size(),
        static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(spec.n()));
  return lits;
}

namespace {

// Fused derive+evaluate with early exit: a term dies on the first 0 bit, a
// clause stays satisfied (not activated) on the first 1 bit. Expected PRF
// calls per edge near weight n/2 is ~2 instead of s.
inline bool edge_activated_fast(const MultiplexerSpec& spec,
                                const std::uint32_t* path, std::size_t plen,
                                const Point& x, bool term_edge) {
  const int s = term_edge ? spec.term_size() : spec.clause_size();
  const auto n = static_cast<std::uint32_t>(spec.n());
  for (int idx = 0; idx < s; ++idx) {
    const std::uint32_t lit = spec.edge_prf().uniform_coord(
        kTagEdge, path, plen, static_cast<std::uint32_t>(idx), n);
    if (x.bit_unchecked(lit) != term_edge) return false;
  }
  return true;
}

inline bool edge_activated_impl(const MultiplexerSpec& spec,
                                const EdgeAddress& e, const Point& x) {
  if (spec.has_overrides()) {
    auto it = spec.overrides().find(e.child);
    if (it != spec.overrides().end())
      return e.is_term_edge() ? term_eval(it->second, x)
                              : !clause_eval(it->second, x);
  }
  return edge_activated_fast(spec, e.child.comps.data(), e.child.comps.size(),
                             x, e.is_term_edge());
}

}  // namespace

bool edge_activated(const MultiplexerSpec& spec, const EdgeAddress& e,
                    const Point& x) {
  if (x.n() != spec.n()) throw ContractError("point dimension mismatch");
  return edge_activated_impl(spec, e, x);
}

static ScanResult scan_impl(const MultiplexerSpec& spec, const NodeAddress& u,
                            const Point& x, bool short_circuit,
                            std::uint64_t* activated_count) {
  const std::size_t child_level = u.level() + 1;
  if (child_level > static_cast<std::size_t>(spec.levels()))
    throw ContractError("scan_children on a leaf");
  if (x.n() != spec.n()) throw ContractError("point dimension mismatch");
  const std::uint64_t arity = spec.arity_at_level(child_level);
  const bool term_edge = child_level % 2 == 1;

  // Reuse one component buffer for all sibling edges.
  std::vector<std::uint32_t> path(u.comps);
  path.push_back(0);

  std::uint64_t count = 0;
  std::uint32_t a1 = 0, a2 = 0;
  for (std::uint64_t a = 1; a <= arity; ++a) {
    path.back() = static_cast<std::uint32_t>(a);
    bool act;
    if (spec.has_overrides()) {
      EdgeAddress e{NodeAddress{path}};
      act = edge_activated_impl(spec, e, x);
    } else {
      act = edge_activated_fast(spec, path.data(), path.size(), x, term_edge);
    }
    if (act) {
      ++count;
      if (count == 1) a1 = static_cast<std::uint32_t>(a);
      else if (count == 2) {
        a2 = static_cast<std::uint32_t>(a);
        if (short_circuit) break;
      }
    }
  }
  if (activated_count) *activated_count = count;
  if (count == 0) return {ScanResult::Kind::None, 0, 0};
  if (count == 1) return {ScanResult::Kind::Unique, a1, 0};
  return {ScanResult::Kind::Multi, a1, a2};
}

ScanResult scan_children(const MultiplexerSpec& spec, const NodeAddress& u,
                         const Point& x) {
  return scan_impl(spec, u, x, /*short_circuit=*/true, nullptr);
}

ScanResult scan_children_full(const MultiplexerSpec& spec,
                              const NodeAddress& u, const Point& x,
                              std::uint64_t* activated_count) {
  return scan_impl(spec, u, x, /*short_circuit=*/false, activated_count);
}

ActivationResult activation_path(const MultiplexerSpec& spec, const Point& x) {
  ActivationResult r;
  r.path.push_back(NodeAddress{});
  for (;;) {
    const NodeAddress& u = r.path.back();
    if (u.level() == static_cast<std::size_t>(spec.levels())) {
      r.terminal = Terminal::Leaf;
      return r;
    }
    const ScanResult s = scan_children(spec, u, x);
    switch (s.kind) {
      case ScanResult::Kind::Unique:
        r.path.push_back(u.child(s.a1));
        break;
      case ScanResult::Kind::None:
        r.terminal = Terminal::NoneActivated;
        return r;
      case ScanResult::Kind::Multi:
        r.terminal = Terminal::MultiActivated;
        r.a1 = s.a1;
        r.a2 = s.a2;
        return r;
    }
  }
}

GammaResult gamma_of(const ActivationResult& ar) {
  if (ar.terminal == Terminal::Leaf)
    return {GammaResult::Kind::Leaf, ar.end()};
  const bool even_k = ar.k() % 2 == 0;
  if (ar.terminal == Terminal::NoneActivated)
    return {even_k ? GammaResult::Kind::Star0 : GammaResult::Kind::Star1, {}};
  return {even_k ? GammaResult::Kind::Star1 : GammaResult::Kind::Star0, {}};
}

GammaResult gamma(const MultiplexerSpec& spec, const Point& x) {
  return gamma_of(activation_path(spec, x));
}

}  // namespace mtsim
