#include "mtsim/relerror.hpp"

#include <cmath>
#include <sstream>

namespace mtsim {

std::uint64_t sandwich_term_arity(int term_size) {
  return static_cast<std::uint64_t>(
      std::ceil(std::pow(4.0 / 3.0, term_size)));
}

std::uint64_t sandwich_clause_arity(int clause_size) {
  std::uint64_t a = 1;
  for (int i = 0; i < clause_size; ++i) a *= 4;
  return a;
}

SandwichBuild build_sandwich_instance(int n, Variant variant,
                                      const Seed256& tree_seed,
                                      const Seed256& leaf_seed,
                                      const SandwichOptions& opts,
                                      std::optional<int> secret) {
  if (variant != Variant::RelYes && variant != Variant::RelNo)
    throw ContractError("sandwich instances use the RelYes/RelNo variants");
  std::vector<std::uint64_t> arities;
  if (opts.arities) {
    arities = *opts.arities;
  } else {
    for (int lv = 1; lv <= opts.levels; ++lv)
      arities.push_back(lv % 2 == 1 ? sandwich_term_arity(opts.term_size)
                                    : sandwich_clause_arity(opts.clause_size));
  }
  MultiplexerSpec spec(n, opts.levels, arities, opts.term_size,
                       opts.clause_size, tree_seed);
  std::ostringstream d;
  d << "sandwich desk-scale parameters: n=" << n << " levels=" << opts.levels
    << " term_size=" << opts.term_size << " clause_size=" << opts.clause_size
    << " arities=";
  for (std::size_t i = 0; i < arities.size(); ++i)
    d << (i ? "," : "") << arities[i];
  d << " (asymptotic construction uses Theta(log n) literal sizes)";
  return {FunctionInstance(std::move(spec), Regime::Sandwich, variant,
                           leaf_seed, secret),
          d.str()};
}

RelDistanceReport rel_distance_report(const FunctionInstance& f,
                                      const std::vector<int>& directions,
                                      long trials_per_direction, Rng& rng) {
  if (f.regime() != Regime::Sandwich)
    throw ContractError("rel_distance_report expects a sandwich instance");
  RelDistanceReport rep;
  rep.ones_estimate = f.samp_info().ones_estimate;
  rep.trials_per_direction = trials_per_direction;
  rep.directions = directions;
  rep.disclosure = "bounds are per-direction unateness-violation counts "
                   "divided by the frozen |f^{-1}(1)| estimate";
  for (int i : directions) {
    UnateBound b = unate_bound(f, i, trials_per_direction, rng);
    if (b.bound > rep.best_bound) {
      rep.best_bound = b.bound;
      rep.best_direction = i;
    }
    rep.bounds.push_back(std::move(b));
  }
  return rep;
}

EvalFn subcube_embed(EvalFn inner, int k, int n) {
  if (k < 1 || k > n) throw ContractError("subcube_embed: need 1 <= k <= n");
  return [inner = std::move(inner), k, n](const Point& x) -> int {
    if (x.n() != n) throw ContractError("subcube_embed: wrong dimension");
    for (int i = k + 1; i <= n; ++i)
      if (!x.bit(static_cast<std::uint32_t>(i))) return 0;
    Point y(k);
    for (int i = 1; i <= k; ++i)
      if (x.bit(static_cast<std::uint32_t>(i)))
        y.set_bit(static_cast<std::uint32_t>(i), true);
    return inner(y);
  };
}

}  // namespace mtsim
