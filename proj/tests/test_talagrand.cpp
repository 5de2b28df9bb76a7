#include <doctest.h>

#include "mtsim/talagrand.hpp"

using namespace mtsim;

namespace {

FunctionInstance middle_instance(int n, int levels, Variant v,
                                 std::uint64_t tree_seed,
                                 std::uint64_t leaf_seed) {
  return FunctionInstance(
      MultiplexerSpec::middle_default(n, levels, seed_from_u64(tree_seed)),
      Regime::Middle, v, seed_from_u64(leaf_seed));
}

}  // namespace

TEST_CASE("middle truncation dominates outside the layers") {
  const FunctionInstance f = middle_instance(16, 2, Variant::Yes, 1, 2);
  Rng rng(3);
  for (int w : {0, 1, 2, 3}) CHECK(f.eval(sample_layer(16, w, rng)) == 0);
  for (int w : {13, 14, 15, 16}) CHECK(f.eval(sample_layer(16, w, rng)) == 1);
  CHECK(!f.in_layers(3));
  CHECK(f.in_layers(4));
  CHECK(f.in_layers(12));
  CHECK(!f.in_layers(13));
}

TEST_CASE("strong_query matches eval on in-layer points and throws outside") {
  const FunctionInstance f = middle_instance(16, 2, Variant::No, 4, 5);
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    const int w = 4 + static_cast<int>(rng.below(9));
    const Point x = sample_layer(16, w, rng);
    CHECK(f.strong_query(x).implied_value == f.eval(x));
  }
  CHECK_THROWS_AS(f.strong_query(sample_layer(16, 2, rng)), OutOfLayerError);
  CHECK_THROWS_AS(f.strong_query(sample_layer(16, 14, rng)), OutOfLayerError);
}

TEST_CASE("strong response evidence matches its case") {
  const FunctionInstance f = middle_instance(16, 2, Variant::Yes, 7, 8);
  Rng rng(9);
  int leaves = 0, pairs = 0;
  for (int t = 0; t < 2000; ++t) {
    const int w = 4 + static_cast<int>(rng.below(9));
    const Point x = sample_layer(16, w, rng);
    const StrongResponse r = f.strong_query(x);
    switch (r.kind) {
      case StrongResponse::Case::Leaf:
        ++leaves;
        CHECK(r.path.k() == 2);
        CHECK(r.leaf_bit == r.implied_value);
        break;
      case StrongResponse::Case::NoneCase:
        CHECK(r.implied_value == (r.path.k() % 2 == 0 ? 0 : 1));
        break;
      case StrongResponse::Case::MultiCase:
        CHECK(r.implied_value == (r.path.k() % 2 == 0 ? 1 : 0));
        // Pair bits appear exactly at the penultimate level.
        CHECK(r.has_pair_bits == (r.path.k() == 1));
        if (r.has_pair_bits) {
          ++pairs;
          CHECK(r.b1 >= 0);
          CHECK(r.b2 >= 0);
        }
        break;
    }
  }
  CHECK(leaves > 0);
  CHECK(pairs > 0);
}

TEST_CASE("No variant leaves read the secret coordinate only") {
  const FunctionInstance f = middle_instance(16, 2, Variant::No, 10, 11);
  REQUIRE(f.secret_of().has_value());
  const int s = *f.secret_of();
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    Point x = sample_layer(16, 8, rng);
    const StrongResponse r = f.strong_query(x);
    if (r.kind != StrongResponse::Case::Leaf) continue;
    // Flipping any non-secret coordinate that keeps the same leaf keeps the
    // leaf bit; flipping the secret flips it.
    const NodeAddress leaf = r.path.end();
    Point xs = x;
    xs.flip_inplace(static_cast<std::uint32_t>(s));
    CHECK(f.leaf_value(leaf, xs) == 1 - f.leaf_value(leaf, x));
    const std::uint32_t other = s == 1 ? 2 : 1;
    Point xo = x;
    xo.flip_inplace(other);
    CHECK(f.leaf_value(leaf, xo) == f.leaf_value(leaf, x));
  }
}

TEST_CASE("CwxNo leaves are anti-dictators of their own secrets") {
  const FunctionInstance f = middle_instance(16, 3, Variant::CwxNo, 13, 14);
  CHECK(!f.secret_of().has_value());
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    Point x = sample_layer(16, 8, rng);
    const StrongResponse r = f.strong_query(x);
    if (r.kind != StrongResponse::Case::Leaf) continue;
    const NodeAddress leaf = r.path.end();
    CHECK(f.leaf_is_antidictator(leaf));
    const int su = f.leaf_secret_of(leaf);
    CHECK(f.leaf_value(leaf, x) == (x.bit(static_cast<std::uint32_t>(su)) ? 0 : 1));
  }
}

TEST_CASE("Yes variant leaf constants can be overridden for fixtures") {
  FunctionInstance f = middle_instance(16, 2, Variant::Yes, 16, 17);
  Rng rng(18);
  for (int t = 0; t < 200; ++t) {
    Point x = sample_layer(16, 8, rng);
    const StrongResponse r = f.strong_query(x);
    if (r.kind != StrongResponse::Case::Leaf) continue;
    f.override_leaf_const(r.path.end(), 1);
    CHECK(f.eval(x) == 1);
    f.override_leaf_const(r.path.end(), 0);
    CHECK(f.eval(x) == 0);
    break;
  }
}

TEST_CASE("explicit secret is honored") {
  const FunctionInstance f(
      MultiplexerSpec::middle_default(16, 2, seed_from_u64(19)),
      Regime::Middle, Variant::No, seed_from_u64(20), 5);
  CHECK(f.secret_of() == 5);
}
