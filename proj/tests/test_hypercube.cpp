#include <doctest.h>

#include "mtsim/hypercube.hpp"

using namespace mtsim;

TEST_CASE("Point bit ops maintain weight") {
  Point x(10);
  CHECK(x.weight() == 0);
  x.set_bit(3, true);
  x.set_bit(10, true);
  CHECK(x.weight() == 2);
  x.set_bit(3, true);  // idempotent
  CHECK(x.weight() == 2);
  x.flip_inplace(3);
  CHECK(x.weight() == 1);
  CHECK(!x.bit(3));
  CHECK(x.bit(10));
  CHECK_THROWS_AS(x.bit(0), std::out_of_range);
  CHECK_THROWS_AS(x.bit(11), std::out_of_range);
}

TEST_CASE("ones/zeros/flipped/leq") {
  Point x = Point::from_string("1010");
  CHECK(x.ones() == IndexSet{1, 3});
  CHECK(x.zeros() == IndexSet{2, 4});
  Point y = flip(x, {2});
  CHECK(y.to_string() == "1110");
  CHECK(x.leq(y));
  CHECK(!y.leq(x));
  CHECK(x.leq(x));
  Point z = Point::from_string("0110");
  CHECK(!x.leq(z));
  CHECK(!z.leq(x));
}

TEST_CASE("mask and string round trips") {
  for (std::uint64_t v : {0ull, 1ull, 0b1011ull, 0b1111ull}) {
    Point x = Point::from_mask(4, v);
    CHECK(x.to_mask() == v);
    CHECK(Point::from_string(x.to_string()) == x);
  }
  // from_mask bit 0 is coordinate 1; coordinate 1 is leftmost in strings.
  CHECK(Point::from_mask(4, 1).to_string() == "1000");
}

TEST_CASE("sample_layer hits the requested weight deterministically") {
  Rng a(123), b(123);
  for (int w : {0, 1, 8, 16}) {
    Point x = sample_layer(16, w, a);
    CHECK(x.weight() == w);
    CHECK(sample_layer(16, w, b) == x);
  }
}

TEST_CASE("layer predicates") {
  // n = 16: middle layers are [4, 12].
  CHECK(!in_middle_layers(3, 16));
  CHECK(in_middle_layers(4, 16));
  CHECK(in_middle_layers(12, 16));
  CHECK(!in_middle_layers(13, 16));
  // n = 16: sandwich layers are {12, 13}.
  CHECK(!in_sandwich_layers(11, 16));
  CHECK(in_sandwich_layers(12, 16));
  CHECK(in_sandwich_layers(13, 16));
  CHECK(!in_sandwich_layers(14, 16));
}

TEST_CASE("term and clause evaluation with repeats") {
  Point x = Point::from_string("1100");
  CHECK(term_eval({1, 2}, x));
  CHECK(!term_eval({1, 3}, x));
  CHECK(term_eval({1, 1}, x));
  CHECK(clause_eval({2, 3}, x));
  CHECK(!clause_eval({3, 4}, x));
  CHECK(!clause_eval({3, 3}, x));
}

TEST_CASE("binomial exact values") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 10) == 1);
  CHECK(static_cast<unsigned long long>(binomial(52, 26)) ==
        495918532948104ull);
  // C(64, 32) needs 128-bit headroom in intermediates but fits in 64 bits.
  CHECK(static_cast<unsigned long long>(binomial(64, 32)) ==
        1832624140942590534ull);
}
