#pragma once
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mtsim/distance.hpp"
#include "mtsim/talagrand.hpp"

namespace mtsim {

// Query budget for relative-error testing: round(n^{1 - 1/(2l+1)} / log2 n),
// floored at 1.
inline long rel_query_budget(int n, int ell) {
  const double v = std::pow(static_cast<double>(n), 1.0 - 1.0 / (2 * ell + 1)) /
                   std::log2(static_cast<double>(n));
  const long r = static_cast<long>(std::floor(v + 0.5));
  return r < 1 ? 1 : r;
}

// Arity schedule for sandwich-regime trees as a function of literal size:
// ceil((4/3)^s) children per term edge, 4^s per clause edge.
std::uint64_t sandwich_term_arity(int term_size);
std::uint64_t sandwich_clause_arity(int clause_size);

struct SandwichOptions {
  int levels = 2;
  int term_size = 2;    // desk-scale default; the asymptotic construction
  int clause_size = 2;  // takes these to Theta(log n)
  std::optional<std::vector<std::uint64_t>> arities;  // override the schedule
};

struct SandwichBuild {
  FunctionInstance instance;
  // Human-readable record of every scaled-down parameter choice; embedded in
  // reports so no run silently pretends to asymptotic parameters.
  std::string disclosure;
};

// Sandwich-regime instance (RelYes or RelNo). n must be divisible by 4.
SandwichBuild build_sandwich_instance(int n, Variant variant,
                                      const Seed256& tree_seed,
                                      const Seed256& leaf_seed,
                                      const SandwichOptions& opts = {},
                                      std::optional<int> secret = std::nullopt);

struct RelDistanceReport {
  long double ones_estimate = 0;  // frozen |f^{-1}(1)| estimate
  long trials_per_direction = 0;
  std::vector<int> directions;
  std::vector<UnateBound> bounds;  // one per direction
  double best_bound = 0;
  int best_direction = 0;
  std::string disclosure;
};

// Relative-distance-to-monotone lower bounds via per-direction unateness
// violations, scaled by the instance's satisfying-set size estimate.
RelDistanceReport rel_distance_report(const FunctionInstance& f,
                                      const std::vector<int>& directions,
                                      long trials_per_direction, Rng& rng);

// Embed a k-variable function into n variables as
//   F(x) = x_{k+1} & ... & x_n & f(x_1..x_k),
// preserving monotonicity and mapping f's satisfying set into the top of the
// larger cube.
EvalFn subcube_embed(EvalFn inner, int k, int n);

}  // namespace mtsim
