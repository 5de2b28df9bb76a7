#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mtsim/harness.hpp"

using namespace mtsim;

TEST_CASE("node address string round trip") {
  const NodeAddress u{{3, 1, 7}};
  CHECK(u.to_string() == "(3,1,7)");
  CHECK(node_address_from_string("(3,1,7)") == u);
  CHECK(node_address_from_string("()") == NodeAddress{});
}

TEST_CASE("spec JSON round trip including overrides") {
  MultiplexerSpec spec(8, 2, {3, 5}, 2, 3, seed_from_u64(77));
  spec.override_edge(NodeAddress{{2}}, {1, 8});
  const json j = spec_to_json(spec);
  const MultiplexerSpec back = spec_from_json(j);
  CHECK(back.n() == 8);
  CHECK(back.levels() == 2);
  CHECK(back.arities() == std::vector<std::uint64_t>{3, 5});
  CHECK(back.term_size() == 2);
  CHECK(back.clause_size() == 3);
  CHECK(back.master_seed() == spec.master_seed());
  REQUIRE(back.has_overrides());
  CHECK(back.overrides().at(NodeAddress{{2}}) == LiteralList{1, 8});
}

TEST_CASE("instance JSON round trip preserves evaluation") {
  const FunctionInstance f(
      MultiplexerSpec::middle_default(16, 2, seed_from_u64(1)),
      Regime::Middle, Variant::No, seed_from_u64(2));
  const FunctionInstance g = instance_from_json(instance_to_json(f));
  CHECK(g.variant() == Variant::No);
  CHECK(g.secret_of() == f.secret_of());
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Point x = sample_layer(16, 4 + static_cast<int>(rng.below(9)), rng);
    CHECK(g.eval(x) == f.eval(x));
  }
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(
      {"preset=attack-cwx", "n=64", "trials=7", "scale=2.5", "budget=99"});
  CHECK(cfg.preset == "attack-cwx");
  CHECK(cfg.n == 64);
  CHECK(cfg.trials == 7);
  CHECK(cfg.scale == doctest::Approx(2.5));
  CHECK(cfg.budget == 99);
  CHECK_THROWS_AS(parse_config({"nonsense=1"}), ContractError);
  CHECK_THROWS_AS(parse_config({"n"}), ContractError);
}

TEST_CASE("config files accept comments and overrides win") {
  const char* path = "test_config.tmp";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "preset=yes-monotone\n";
    out << "n=16\n";
    out << "trials=3\n";
  }
  const ExperimentConfig cfg = load_config_file(path, {"trials=5"});
  std::remove(path);
  CHECK(cfg.preset == "yes-monotone");
  CHECK(cfg.n == 16);
  CHECK(cfg.trials == 5);
}

TEST_CASE("experiment logs are byte-identical across thread counts") {
  ExperimentConfig cfg = parse_config(
      {"preset=yes-monotone", "n=16", "trials=6", "samples=200"});
  cfg.threads = 1;
  const ExperimentResult one = run_experiment(cfg);
  cfg.threads = 4;
  const ExperimentResult four = run_experiment(cfg);
  CHECK(one.to_jsonl() == four.to_jsonl());
  CHECK(one.ok);
}

TEST_CASE("replay reproduces a recorded log") {
  ExperimentConfig cfg = parse_config(
      {"preset=oracle-consistency", "n=16", "trials=4", "samples=100"});
  const ExperimentResult res = run_experiment(cfg);
  CHECK(replay_matches(res.to_jsonl()));
}
