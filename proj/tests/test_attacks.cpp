#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "mtsim/attacks.hpp"
#include "mtsim/harness.hpp"
#include "mtsim/relerror.hpp"

using namespace mtsim;

namespace {

FunctionInstance no_instance(int n, int levels, Variant v, std::uint64_t tree,
                             std::uint64_t leaf) {
  return FunctionInstance(
      MultiplexerSpec::middle_default(n, levels, seed_from_u64(tree)),
      Regime::Middle, v, seed_from_u64(leaf));
}

}  // namespace

TEST_CASE("attack code never touches secret accessors") {
  // One-sidedness is load-bearing: the attacks must learn the secret only
  // through oracle answers. Enforce it at the source level.
  std::ifstream in(std::string(MTSIM_SOURCE_ROOT) + "/core/src/attacks.cpp");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string src = ss.str();
  CHECK(src.find("secret_of") == std::string::npos);
  CHECK(src.find("leaf_secret_of") == std::string::npos);
  CHECK(src.find("leaf_is_antidictator") == std::string::npos);
  CHECK(src.find("samp_query") == std::string::npos);
}

TEST_CASE("frozen query budget values") {
  CHECK(query_budget(64, 1) == 1);
  CHECK(query_budget(4096, 1) == 1);
  CHECK(query_budget(256, 1) == 1);
  CHECK(rel_query_budget(16, 1) == 2);
}

TEST_CASE("attack preconditions are validated") {
  Rng rng(1);
  const FunctionInstance two = no_instance(16, 2, Variant::No, 1, 2);
  const FunctionInstance three = no_instance(16, 3, Variant::No, 1, 2);
  const FunctionInstance cwx = no_instance(16, 3, Variant::CwxNo, 1, 2);
  CHECK_THROWS_AS(attack_general(three, 1, rng), ContractError);
  CHECK_THROWS_AS(attack_general(cwx, 1, rng), ContractError);
  CHECK_THROWS_AS(attack_three_level(two, rng), ContractError);
  CHECK_THROWS_AS(attack_cwx_skip(two, rng), ContractError);
  CHECK_THROWS_AS(attack_cwx_skip(three, rng), ContractError);
}

TEST_CASE("attack results respect budgets and verify their witnesses") {
  AttackParams p;
  p.scale = 8;
  p.rep_scale = 8;
  p.restarts = 64;
  p.query_budget = 400;
  int found = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const FunctionInstance f = no_instance(64, 2, Variant::No, 100 + s, 200 + s);
    Rng rng(300 + s);
    const AttackResult res = attack_general(f, 1, rng, p);
    CHECK(res.budget.queries_used <= 400);
    CHECK_NOTHROW(res.outcome.check_facts(Regime::Middle));
    if (res.violation_found) {
      ++found;
      CHECK(f.eval(res.lower) == 1);
      CHECK(f.eval(res.upper) == 0);
      CHECK(res.lower.leq(res.upper));
      CHECK(!(res.lower == res.upper));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("skip attack honors its cap and verifies witnesses") {
  AttackParams p;
  p.scale = 16;
  p.rep_scale = 16;
  p.restarts = 64;
  p.query_budget = 1280;
  int found = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const FunctionInstance f =
        no_instance(64, 3, Variant::CwxNo, 400 + s, 500 + s);
    Rng rng(600 + s);
    const AttackResult res = attack_cwx_skip(f, rng, p);
    CHECK(res.budget.queries_used <= 1280);
    if (res.violation_found) {
      ++found;
      CHECK(f.eval(res.lower) == 1);
      CHECK(f.eval(res.upper) == 0);
      CHECK(res.lower.leq(res.upper));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("attacks never report violations on monotone Yes instances") {
  AttackParams p;
  p.scale = 4;
  p.rep_scale = 4;
  p.query_budget = 300;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const FunctionInstance f = no_instance(64, 2, Variant::Yes, 700 + s, 800 + s);
    Rng rng(900 + s);
    const AttackResult res = attack_general(f, 1, rng, p);
    CHECK(!res.violation_found);
  }
}

TEST_CASE("edge tester rejects a blatant violation and accepts monotone") {
  Rng rng(42);
  const EvalFn anti = [](const Point& x) { return x.bit(1) ? 0 : 1; };
  CHECK(edge_tester_rejects(anti, 4, 400, rng));
  const EvalFn maj = [](const Point& x) { return x.weight() >= 2 ? 1 : 0; };
  CHECK(!edge_tester_rejects(maj, 4, 400, rng));
}

TEST_CASE("testers account queries against the instance oracle") {
  const FunctionInstance f = no_instance(16, 2, Variant::No, 21, 22);
  Rng rng(23);
  const TesterVerdict v = edge_tester(f, 50, rng);
  CHECK(v.queries_used <= 50);
  if (v.rejected) {
    CHECK(f.eval(v.lower) == 1);
    CHECK(f.eval(v.upper) == 0);
  }
  Rng rng2(24);
  const TesterVerdict pv = pair_tester(f, 50, rng2);
  CHECK(pv.queries_used <= 50);
}

TEST_CASE("tester names are stable identifiers") {
  CHECK(std::string(tester_name(TesterKind::Edge)) == "edge");
  CHECK(std::string(tester_name(TesterKind::AttackCwx)) == "attack-cwx");
}
