#pragma once
#include <functional>
#include <vector>

#include "mtsim/talagrand.hpp"

namespace mtsim {

// Black-box function handle for distance machinery (works for instances,
// truth tables, and hand fixtures alike).
using EvalFn = std::function<int(const Point&)>;

inline EvalFn eval_fn(const FunctionInstance& f) {
  return [&f](const Point& x) { return f.eval(x); };
}

struct ViolationPair {
  Point x, y;  // x strictly below y, f(x)=1, f(y)=0
};

enum class DistanceKind { Exact, MatchingLowerBound, SampledEdgeLowerBound };

struct DistanceEstimate {
  double value = 0;
  DistanceKind kind = DistanceKind::Exact;
  // For exact/matching kinds: value = numerator / 2^n exactly.
  unsigned long long numerator = 0;
  long trials = 0;  // sampling estimators only
};

// Lower bound from pairwise vertex-disjoint violating pairs: |pairs| / 2^n.
// Rejects non-violating or vertex-sharing pairs.
DistanceEstimate fln_bound(const EvalFn& f, int n,
                           const std::vector<ViolationPair>& pairs);

// Exact distance to monotone as a minimum cut (closure problem on the
// covering DAG: up-sets of the hypercube <-> monotone functions).
DistanceEstimate exact_distance(const EvalFn& f, int n, int exact_limit = 14);

// Exhaustive greedy family of vertex-disjoint violating edges (small n).
std::vector<ViolationPair> violating_edge_matching(const EvalFn& f, int n);

// All violating hypercube edges (x, x^i) with f(x)=1 above-flip 0 (small n).
struct ViolatingEdge {
  Point lower;
  std::uint32_t coord;
};
std::vector<ViolatingEdge> all_violating_edges(const EvalFn& f, int n);

// Lemma-3.4-style estimator for No-variant instances: samples x with x_s=0
// at in-layer weights, tests the three conditions, scales the hit density to
// a disjoint-edge FLN bound (edges along one coordinate are automatically
// vertex-disjoint).
struct SecretEdgeScan {
  DistanceEstimate estimate;       // sampled-edge lower bound
  double cond_same_leaf_rate = 0;  // both endpoints reach the same leaf
  double cond_antidict_rate = 0;   // ...and its leaf is an anti-dictator
  long trials = 0;
  long hits = 0;
};
SecretEdgeScan secret_edge_scan(const FunctionInstance& f, long trials,
                                Rng& rng);

// Exhaustive (n <= 20) matching bound from the full set of violating edges
// along the secret coordinate of a No/RelNo instance. Such edges are
// pairwise vertex-disjoint, so the bound is |edges| / 2^n.
DistanceEstimate secret_edge_fln_exhaustive(const FunctionInstance& f);

// Relative-error unate bound along direction i (sandwich regime):
// min(|Edges_i^1|, |Edges_i^0|) / |f^{-1}(1)|, both counts estimated by
// stratified sampling at the sandwich-adjacent layers.
struct UnateBound {
  double increasing_edges = 0;  // |Edges_i^1| estimate
  double decreasing_edges = 0;  // |Edges_i^0| estimate
  double bound = 0;
  long trials = 0;
};
UnateBound unate_bound(const FunctionInstance& f, int i, long trials,
                       Rng& rng);

}  // namespace mtsim
