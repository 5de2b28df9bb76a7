#include <doctest.h>

#include "mtsim/multiplexer.hpp"

using namespace mtsim;

namespace {

// Two-level fixture over n = 4 with every edge pinned:
//   terms      T1 = {1,2}, T2 = {3,4}
//   clauses under (1): C11 = {3,4}, C12 = {2,4}
//   clauses under (2): C21 = {1,2}, C22 = {1,3}
MultiplexerSpec fixture() {
  MultiplexerSpec spec(4, 2, {2, 2}, 2, 2, seed_from_u64(1));
  spec.override_edge(NodeAddress{{1}}, {1, 2});
  spec.override_edge(NodeAddress{{2}}, {3, 4});
  spec.override_edge(NodeAddress{{1, 1}}, {3, 4});
  spec.override_edge(NodeAddress{{1, 2}}, {2, 4});
  spec.override_edge(NodeAddress{{2, 1}}, {1, 2});
  spec.override_edge(NodeAddress{{2, 2}}, {1, 3});
  return spec;
}

}  // namespace

TEST_CASE("fixture activation paths and gamma") {
  const MultiplexerSpec spec = fixture();

  SUBCASE("unique path to a leaf") {
    // 1100: T1 active, T2 dead; C11 falsified (3,4 zero), C12 satisfied by 2.
    const GammaResult g = gamma(spec, Point::from_string("1100"));
    REQUIRE(g.kind == GammaResult::Kind::Leaf);
    CHECK(g.leaf == NodeAddress{{1, 1}});
  }
  SUBCASE("multiple activations at the root") {
    const ActivationResult ar =
        activation_path(spec, Point::from_string("1111"));
    CHECK(ar.terminal == Terminal::MultiActivated);
    CHECK(ar.k() == 0);
    CHECK(ar.a1 == 1);
    CHECK(ar.a2 == 2);
    // Parity table: even k, Multi -> 1*.
    CHECK(gamma_of(ar).kind == GammaResult::Kind::Star1);
  }
  SUBCASE("no activation at the root") {
    const ActivationResult ar =
        activation_path(spec, Point::from_string("0000"));
    CHECK(ar.terminal == Terminal::NoneActivated);
    CHECK(ar.k() == 0);
    // Parity table: even k, None -> 0*.
    CHECK(gamma_of(ar).kind == GammaResult::Kind::Star0);
  }
  SUBCASE("none at an odd level maps to 1*") {
    // 1110: only T1 active; C11 satisfied by 3, C12 satisfied by 2 -> no
    // clause falsified under (1): None at k = 1 -> 1*.
    const ActivationResult ar =
        activation_path(spec, Point::from_string("1110"));
    CHECK(ar.terminal == Terminal::NoneActivated);
    CHECK(ar.k() == 1);
    CHECK(gamma_of(ar).kind == GammaResult::Kind::Star1);
  }
}

TEST_CASE("edge activation semantics: terms want ones, clauses want zeros") {
  const MultiplexerSpec spec = fixture();
  const Point x = Point::from_string("1100");
  CHECK(edge_activated(spec, EdgeAddress{NodeAddress{{1}}}, x));
  CHECK(!edge_activated(spec, EdgeAddress{NodeAddress{{2}}}, x));
  CHECK(edge_activated(spec, EdgeAddress{NodeAddress{{1, 1}}}, x));
  CHECK(!edge_activated(spec, EdgeAddress{NodeAddress{{1, 2}}}, x));
}

TEST_CASE("scan_children_full counts all activations") {
  const MultiplexerSpec spec = fixture();
  std::uint64_t count = 0;
  const ScanResult s = scan_children_full(spec, NodeAddress{},
                                          Point::from_string("1111"), &count);
  CHECK(s.kind == ScanResult::Kind::Multi);
  CHECK(count == 2);
}

TEST_CASE("derive_literals is deterministic, sized, and in range") {
  const MultiplexerSpec spec = MultiplexerSpec::middle_default(
      16, 2, seed_from_u64(5));
  const EdgeAddress e{NodeAddress{{3, 7}}};
  const LiteralList lits = derive_literals(spec, e);
  CHECK(lits.size() == 4);  // sqrt(16)
  for (std::uint32_t c : lits) {
    CHECK(c >= 1);
    CHECK(c <= 16);
  }
  CHECK(derive_literals(spec, e) == lits);
  CHECK(derive_literals(spec, EdgeAddress{NodeAddress{{3, 8}}}) != lits);
}

TEST_CASE("activation path steps are each uniquely activated") {
  const MultiplexerSpec spec = MultiplexerSpec::middle_default(
      16, 2, seed_from_u64(11));
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    const Point x = sample_layer(16, 8, rng);
    const ActivationResult ar = activation_path(spec, x);
    for (std::size_t i = 0; i + 1 < ar.path.size(); ++i) {
      std::uint64_t count = 0;
      scan_children_full(spec, ar.path[i], x, &count);
      CHECK(count == 1);
    }
    CHECK(gamma_of(ar).kind == gamma(spec, x).kind);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(MultiplexerSpec(3, 2, {2, 2}, 2, 2, seed_from_u64(1)),
                  ContractError);
  CHECK_THROWS_AS(MultiplexerSpec(8, 2, {2}, 2, 2, seed_from_u64(1)),
                  ContractError);
  CHECK_THROWS_AS(MultiplexerSpec(8, 2, {2, 1}, 2, 2, seed_from_u64(1)),
                  ContractError);
  CHECK_THROWS_AS(MultiplexerSpec::middle_default(15, 2, seed_from_u64(1)),
                  ContractError);
  MultiplexerSpec ok = fixture();
  CHECK_THROWS_AS(ok.override_edge(NodeAddress{{1}}, {1}), ContractError);
  CHECK_THROWS_AS(ok.override_edge(NodeAddress{{1}}, {1, 9}), ContractError);
}
