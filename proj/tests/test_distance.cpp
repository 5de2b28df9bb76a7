#include <doctest.h>

#include <vector>

#include "mtsim/distance.hpp"

using namespace mtsim;

namespace {

EvalFn table_fn(const std::vector<int>& table, int n) {
  return [table, n](const Point& x) {
    return table[static_cast<std::size_t>(x.to_mask())];
  };
}

bool table_is_monotone(const std::vector<int>& table, int n) {
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t m = 0; m < size; ++m)
    for (int i = 0; i < n; ++i)
      if (!(m >> i & 1) && table[m] > table[m | (std::size_t{1} << i)])
        return false;
  return true;
}

// Minimum Hamming distance to any monotone function, by enumerating every
// monotone truth table (feasible for n <= 4).
unsigned brute_distance_numerator(const std::vector<int>& table, int n) {
  const std::size_t size = std::size_t{1} << n;
  unsigned best = static_cast<unsigned>(size);
  std::vector<int> cand(size);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << size); ++m) {
    for (std::size_t i = 0; i < size; ++i) cand[i] = (m >> i) & 1;
    if (!table_is_monotone(cand, n)) continue;
    unsigned d = 0;
    for (std::size_t i = 0; i < size; ++i) d += cand[i] != table[i];
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

TEST_CASE("exact_distance equals brute enumeration on all 3-variable functions") {
  for (std::uint64_t m = 0; m < 256; ++m) {
    std::vector<int> table(8);
    for (std::size_t i = 0; i < 8; ++i) table[i] = (m >> i) & 1;
    const DistanceEstimate est = exact_distance(table_fn(table, 3), 3);
    CHECK(est.numerator == brute_distance_numerator(table, 3));
    CHECK(est.value == doctest::Approx(est.numerator / 8.0));
  }
}

TEST_CASE("exact_distance equals brute enumeration on random 4-variable functions") {
  Rng rng(77);
  for (int t = 0; t < 25; ++t) {
    std::vector<int> table(16);
    for (auto& b : table) b = rng.bit();
    const DistanceEstimate est = exact_distance(table_fn(table, 4), 4);
    CHECK(est.numerator == brute_distance_numerator(table, 4));
  }
}

TEST_CASE("monotone functions have distance zero; anti-dictator n/2^n") {
  const EvalFn maj = [](const Point& x) { return x.weight() >= 2 ? 1 : 0; };
  CHECK(exact_distance(maj, 3).numerator == 0);
  const EvalFn anti = [](const Point& x) { return x.bit(1) ? 0 : 1; };
  // Best fix flips one endpoint of each of the 2^{n-1} violating edges... the
  // closest monotone function differs on half of them.
  const DistanceEstimate est = exact_distance(anti, 3);
  CHECK(est.numerator == brute_distance_numerator(
                             {1, 0, 1, 0, 1, 0, 1, 0}, 3));
}

TEST_CASE("fln_bound validates pairs and never exceeds exact") {
  const EvalFn anti = [](const Point& x) { return x.bit(1) ? 0 : 1; };
  const auto edges = all_violating_edges(anti, 3);
  CHECK(edges.size() == 4);  // every x with x_1 = 0
  std::vector<ViolationPair> pairs;
  for (const auto& e : edges) {
    Point hi = e.lower;
    hi.flip_inplace(e.coord);
    pairs.push_back({e.lower, hi});
  }
  const DistanceEstimate fln = fln_bound(anti, 3, pairs);
  CHECK(fln.numerator == 4);
  CHECK(fln.value <= exact_distance(anti, 3).value + 1e-12);

  // Vertex-sharing and non-violating pairs are rejected.
  std::vector<ViolationPair> shared = {pairs[0], pairs[0]};
  CHECK_THROWS_AS(fln_bound(anti, 3, shared), ContractError);
  std::vector<ViolationPair> bogus = {{pairs[0].y, pairs[0].x}};
  CHECK_THROWS_AS(fln_bound(anti, 3, bogus), ContractError);
}

TEST_CASE("violating_edge_matching is vertex-disjoint and violating") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> table(16);
    for (auto& b : table) b = rng.bit();
    const EvalFn f = table_fn(table, 4);
    const auto pairs = violating_edge_matching(f, 4);
    std::vector<Point> seen;
    for (const auto& p : pairs) {
      CHECK(f(p.x) == 1);
      CHECK(f(p.y) == 0);
      CHECK(p.x.leq(p.y));
      for (const Point& q : seen) CHECK(!(q == p.x));
      for (const Point& q : seen) CHECK(!(q == p.y));
      seen.push_back(p.x);
      seen.push_back(p.y);
    }
    // FLN property: the matching certifies a lower bound.
    const DistanceEstimate fln = fln_bound(f, 4, pairs);
    CHECK(fln.value <= exact_distance(f, 4).value + 1e-12);
  }
}

TEST_CASE("secret-direction scans certify distance on No instances") {
  const FunctionInstance f(
      MultiplexerSpec::middle_default(16, 2, seed_from_u64(1)),
      Regime::Middle, Variant::No, seed_from_u64(2));
  const DistanceEstimate fln = secret_edge_fln_exhaustive(f);
  const DistanceEstimate exact =
      exact_distance(eval_fn(f), 16, /*exact_limit=*/16);
  CHECK(fln.value <= exact.value + 1e-12);
  CHECK(fln.numerator > 0);

  Rng rng(3);
  const SecretEdgeScan scan = secret_edge_scan(f, 2000, rng);
  CHECK(scan.trials == 2000);
  CHECK(scan.estimate.value >= 0.0);
  CHECK(scan.hits <= scan.trials);
}
