#pragma once
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "mtsim/talagrand.hpp"

namespace mtsim {

// Compact per-parent-node record of which sibling edges received a query in
// the R tables. Arity can be 2^16+, so R is stored as structured rows
// (set algebra over child indices) rather than per-edge lists.
struct RRecord {
  enum class Kind {
    AllExcept,    // every child edge except index a1 (siblings of a traversal)
    All,          // every child edge (terminal no-activation case)
    BelowExcept,  // every index a < a2 with a != a1 (two-activation case)
  };
  int query = 0;  // index into Q
  Kind kind;
  std::uint32_t a1 = 0, a2 = 0;
};

struct CoordinateSets {
  // Per node u with P_u nonempty: A_{u,0}, A_{u,1} (bitsets over [n]).
  struct Entry {
    std::vector<std::uint64_t> a0, a1;
    int size0 = 0, size1 = 0;
  };
  std::map<NodeAddress, Entry> per_node;
};

struct DangerReport {
  std::map<NodeAddress, std::vector<std::uint64_t>> leaf_danger;  // D_u
  std::map<NodeAddress, std::vector<std::uint64_t>> subtree_union;  // B_u
  std::vector<std::uint64_t> global;  // B_eps
  int global_size = 0;
};

// The oracle-revealed ledger (Q, P, R, rho) plus derived predicates.
class Outcome {
 public:
  Outcome(int n, int levels, std::vector<std::uint64_t> arities)
      : n_(n), levels_(levels), arities_(std::move(arities)) {}

  // Fold one answered query into the ledger. Duplicate points are ignored
  // (set semantics of Q) with a warning counter.
  void ingest(const Point& x, const StrongResponse& r);

  int n() const { return n_; }
  int levels() const { return levels_; }
  const std::vector<Point>& queries() const { return queries_; }
  int duplicate_warnings() const { return duplicate_warnings_; }

  const std::map<NodeAddress, std::vector<int>>& p_sets() const { return p_; }
  const std::map<NodeAddress, std::vector<RRecord>>& r_records() const {
    return r_;
  }
  const std::map<NodeAddress, std::map<int, int>>& rho() const { return rho_; }

  // Expanded R membership for one edge (tests / small arities).
  bool r_contains(const EdgeAddress& e, int query_index) const;
  std::vector<int> r_set(const EdgeAddress& e) const;

  CoordinateSets coordinate_sets() const;
  DangerReport danger() const;

  // Def 3.3: every nonempty-leaf rho constant and |B_eps| <= tau * n.
  bool is_safe(double tau) const;

  // Def 4.1 (middle) / Def B.1 (sandwich) with slack constant c and base-2
  // logs: odd-level |A_{u,1}| and even-level non-root |A_{u,0}| large, and
  // leaf rho constant.
  bool is_good(double c, Regime regime) const;

  // Raw quantities for reports.
  double b_eps_fraction() const;
  bool rho_all_constant() const;

  // Debug/property hook: verify the structural facts (P-chain containment,
  // branching mass, nonempty-set count, A-set disjointness/containment and
  // regime caps). Throws ContractError on violation.
  void check_facts(Regime regime) const;

 private:
  int n_;
  int levels_;
  std::vector<std::uint64_t> arities_;
  std::vector<Point> queries_;
  std::map<Point, int> query_index_;
  std::map<NodeAddress, std::vector<int>> p_;
  std::map<NodeAddress, std::vector<RRecord>> r_;
  std::map<NodeAddress, std::map<int, int>> rho_;
  int duplicate_warnings_ = 0;
};

}  // namespace mtsim
