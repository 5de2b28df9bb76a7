#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtsim/hypercube.hpp"
#include "mtsim/prf.hpp"

namespace mtsim {

// Tree node address: (u_1,...,u_j), 1-based components, empty = root.
struct NodeAddress {
  std::vector<std::uint32_t> comps;

  std::size_t level() const { return comps.size(); }
  bool is_root() const { return comps.empty(); }
  NodeAddress parent() const {
    NodeAddress p{comps};
    p.comps.pop_back();
    return p;
  }
  NodeAddress child(std::uint32_t a) const {
    NodeAddress c{comps};
    c.comps.push_back(a);
    return c;
  }
  // True if *this is a proper or improper prefix of other.
  bool is_ancestor_of(const NodeAddress& other) const {
    if (comps.size() > other.comps.size()) return false;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i] != other.comps[i]) return false;
    return true;
  }
  auto operator<=>(const NodeAddress&) const = default;
  std::string to_string() const;  // "(u1,u2,...)"
};

// An edge is (parent(v), v); odd-level edges carry terms, even-level clauses.
struct EdgeAddress {
  NodeAddress child;
  std::size_t level() const { return child.level(); }
  bool is_term_edge() const { return level() % 2 == 1; }
  auto operator<=>(const EdgeAddress&) const = default;
};

// Parameters of a lazy multiplexer tree. Terms/clauses are derived on demand
// per edge from a keyed PRF; the arity^levels tree is never materialized.
class MultiplexerSpec {
 public:
  // Validated constructor. levels >= 1 (the paper-default construction uses
  // even levels; odd counts exist to host the three-alternation attacks and
  // are flagged by callers that use them).
  MultiplexerSpec(int n, int levels, std::vector<std::uint64_t> arity_per_level,
                  int term_size, int clause_size, const Seed256& master_seed);

  // Paper defaults for the middle regime: arity N = 2^sqrt(n) at every level,
  // literal size sqrt(n). Requires integral sqrt(n).
  static MultiplexerSpec middle_default(int n, int levels,
                                        const Seed256& master_seed);

  int n() const { return n_; }
  int levels() const { return levels_; }
  const std::vector<std::uint64_t>& arities() const { return arity_; }
  std::uint64_t arity_at_level(std::size_t level) const {  // 1-based level
    return arity_[level - 1];
  }
  int term_size() const { return term_size_; }
  int clause_size() const { return clause_size_; }
  int literal_size(std::size_t level) const {
    return level % 2 == 1 ? term_size_ : clause_size_;
  }
  const Seed256& master_seed() const { return master_seed_; }

  // Hand-built fixture support: pin the literal list of a specific edge.
  void override_edge(const NodeAddress& child, LiteralList lits);
  bool has_overrides() const { return !overrides_.empty(); }
  const std::map<NodeAddress, LiteralList>& overrides() const {
    return overrides_;
  }

  const Prf& edge_prf() const { return edge_prf_; }

 private:
  int n_;
  int levels_;
  std::vector<std::uint64_t> arity_;
  int term_size_;
  int clause_size_;
  Seed256 master_seed_;
  Prf edge_prf_;
  std::map<NodeAddress, LiteralList> overrides_;
};

struct ScanResult {
  enum class Kind { None, Unique, Multi } kind;
  std::uint32_t a1 = 0;  // Unique: the index; Multi: smallest activated
  std::uint32_t a2 = 0;  // Multi: second smallest activated
};

enum class Terminal { Leaf, NoneActivated, MultiActivated };

struct ActivationResult {
  std::vector<NodeAddress> path;  // u^0 (root) .. u^k
  Terminal terminal;
  std::uint32_t a1 = 0, a2 = 0;  // for MultiActivated
  std::size_t k() const { return path.size() - 1; }
  const NodeAddress& end() const { return path.back(); }
};

struct GammaResult {
  enum class Kind { Leaf, Star0, Star1 } kind;
  NodeAddress leaf;  // valid iff kind == Leaf
};

// The s literal indices of edge e, identical on every call for fixed
// (seed, e); distinct edges use disjoint PRF domains.
LiteralList derive_literals(const MultiplexerSpec& spec, const EdgeAddress& e);

// Term satisfied (odd level) / clause falsified (even level) by x.
bool edge_activated(const MultiplexerSpec& spec, const EdgeAddress& e,
                    const Point& x);

// Short-circuit scan: child indices in increasing order; may stop after a
// second activation (Multi). None/Unique always reflect a full scan.
ScanResult scan_children(const MultiplexerSpec& spec, const NodeAddress& u,
                         const Point& x);

// Full scan: never short-circuits; additionally reports the total number of
// activated children (the entry point that yields complete Case-2 evidence).
ScanResult scan_children_full(const MultiplexerSpec& spec,
                              const NodeAddress& u, const Point& x,
                              std::uint64_t* activated_count = nullptr);

// Unique activation path of x: maximal root-down chain of uniquely activated
// edges. Memory O(levels); touches at most sum(arity) edges.
ActivationResult activation_path(const MultiplexerSpec& spec, const Point& x);

// Multiplexer map: Leaf(u^k) when the path reaches a leaf, else the 0*/1*
// labels via the parity table (even k: None->0*, Multi->1*; odd k flipped).
GammaResult gamma(const MultiplexerSpec& spec, const Point& x);
GammaResult gamma_of(const ActivationResult& ar);

}  // namespace mtsim
