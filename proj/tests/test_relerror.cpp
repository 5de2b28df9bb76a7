#include <doctest.h>

#include "mtsim/relerror.hpp"

using namespace mtsim;

TEST_CASE("sandwich arity schedule") {
  CHECK(sandwich_term_arity(2) == 2);   // ceil((4/3)^2) = ceil(1.78)
  CHECK(sandwich_term_arity(3) == 3);   // ceil(2.37)
  CHECK(sandwich_term_arity(4) == 4);   // ceil(3.16)
  CHECK(sandwich_clause_arity(2) == 16);
  CHECK(sandwich_clause_arity(3) == 64);
}

TEST_CASE("sandwich builder validation") {
  CHECK_THROWS_AS(build_sandwich_instance(10, Variant::RelYes,
                                          seed_from_u64(1), seed_from_u64(2)),
                  ContractError);
  CHECK_THROWS_AS(build_sandwich_instance(16, Variant::Yes, seed_from_u64(1),
                                          seed_from_u64(2)),
                  ContractError);
  const SandwichBuild b = build_sandwich_instance(
      16, Variant::RelYes, seed_from_u64(1), seed_from_u64(2));
  CHECK(b.instance.regime() == Regime::Sandwich);
  CHECK(b.instance.n() == 16);
  CHECK(!b.disclosure.empty());
}

TEST_CASE("sandwich truncation pins values outside layers 3n/4, 3n/4+1") {
  const SandwichBuild b = build_sandwich_instance(
      16, Variant::RelYes, seed_from_u64(3), seed_from_u64(4));
  Rng rng(5);
  CHECK(b.instance.eval(sample_layer(16, 11, rng)) == 0);
  CHECK(b.instance.eval(sample_layer(16, 14, rng)) == 1);
  CHECK(b.instance.in_layers(12));
  CHECK(b.instance.in_layers(13));
  CHECK(!b.instance.in_layers(11));
  CHECK(!b.instance.in_layers(14));
}

TEST_CASE("SAMP emits satisfying in-layer points") {
  const SandwichBuild b = build_sandwich_instance(
      16, Variant::RelNo, seed_from_u64(6), seed_from_u64(7));
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const Point x = b.instance.samp_query(rng);
    CHECK(b.instance.eval(x) == 1);
  }
  CHECK(b.instance.samp_info().valid);
}

TEST_CASE("RelNo carries a secret and a positive unate bound signal") {
  const SandwichBuild b = build_sandwich_instance(
      16, Variant::RelNo, seed_from_u64(9), seed_from_u64(10));
  REQUIRE(b.instance.secret_of().has_value());
  Rng rng(11);
  const UnateBound ub =
      unate_bound(b.instance, *b.instance.secret_of(), 3000, rng);
  CHECK(ub.bound >= 0.0);
  CHECK(ub.trials > 0);
}

TEST_CASE("rel_distance_report scans requested directions") {
  const SandwichBuild b = build_sandwich_instance(
      16, Variant::RelNo, seed_from_u64(12), seed_from_u64(13));
  Rng rng(14);
  const RelDistanceReport rep =
      rel_distance_report(b.instance, {1, 2, 3}, 500, rng);
  CHECK(rep.bounds.size() == 3);
  CHECK(rep.best_bound >= 0.0);
  CHECK(!rep.disclosure.empty());
}

TEST_CASE("subcube_embed preserves values and monotonicity") {
  const EvalFn maj = [](const Point& x) { return x.weight() >= 2 ? 1 : 0; };
  const EvalFn big = subcube_embed(maj, 3, 6);
  for (std::uint64_t m = 0; m < 64; ++m) {
    const Point x = Point::from_mask(6, m);
    Point inner(3);
    for (std::uint32_t i = 1; i <= 3; ++i) inner.set_bit(i, x.bit(i));
    const bool top = x.bit(4) && x.bit(5) && x.bit(6);
    CHECK(big(x) == ((top && maj(inner)) ? 1 : 0));
  }
}
