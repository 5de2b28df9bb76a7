// mtsim: command-line front end for the multiplexer-tree monotonicity
// simulation library. Every command prints JSON on stdout; --check makes the
// process exit with status 2 when the command's verdict fails.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mtsim/harness.hpp"
#include "mtsim/relerror.hpp"

using namespace mtsim;

namespace {

constexpr int kCheckFailure = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_instance_json(const std::string& path) {
  return json::parse(read_file(path));
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  }
}

struct SeedOpt {
  std::string hex;
  Seed256 get(std::uint64_t fallback) const {
    if (hex.empty()) return seed_from_u64(fallback);
    return seed_from_hex(hex);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplexer-tree monotonicity testing simulator"};
  app.require_subcommand(1);

  // ---- sample-fn -----------------------------------------------------
  auto* sample = app.add_subcommand(
      "sample-fn", "sample a function instance and print its descriptor");
  int sf_n = 16, sf_levels = 0, sf_ell = 1, sf_term = 2, sf_clause = 2;
  std::string sf_variant = "Yes", sf_out;
  SeedOpt sf_tree, sf_leaf;
  int sf_secret = 0;
  sample->add_option("--n", sf_n, "dimension");
  sample->add_option("--levels", sf_levels, "tree levels (default 2*ell)");
  sample->add_option("--ell", sf_ell, "adaptivity parameter");
  sample->add_option("--variant", sf_variant,
                     "Yes | No | CwxNo | RelYes | RelNo");
  sample->add_option("--tree-seed", sf_tree.hex, "64 hex chars");
  sample->add_option("--leaf-seed", sf_leaf.hex, "64 hex chars");
  sample->add_option("--secret", sf_secret,
                     "explicit secret coordinate (No variants)");
  sample->add_option("--term-size", sf_term, "sandwich term literal size");
  sample->add_option("--clause-size", sf_clause,
                     "sandwich clause literal size");
  sample->add_option("--out", sf_out, "output path (default stdout)");
  sample->callback([&] {
    const int levels = sf_levels > 0 ? sf_levels : 2 * sf_ell;
    const Seed256 tree = sf_tree.get(1), leaf = sf_leaf.get(2);
    std::optional<int> secret;
    if (sf_secret > 0) secret = sf_secret;
    if (sf_variant == "RelYes" || sf_variant == "RelNo") {
      SandwichOptions opts;
      opts.levels = levels;
      opts.term_size = sf_term;
      opts.clause_size = sf_clause;
      SandwichBuild b = build_sandwich_instance(
          sf_n, sf_variant == "RelYes" ? Variant::RelYes : Variant::RelNo,
          tree, leaf, opts, secret);
      json j = instance_to_json(b.instance);
      j["disclosure"] = b.disclosure;
      emit(j, sf_out);
    } else {
      Variant v = sf_variant == "Yes"   ? Variant::Yes
                  : sf_variant == "No"  ? Variant::No
                  : sf_variant == "CwxNo"
                      ? Variant::CwxNo
                      : throw ContractError("unknown variant " + sf_variant);
      FunctionInstance f(MultiplexerSpec::middle_default(sf_n, levels, tree),
                         Regime::Middle, v, leaf, secret);
      emit(instance_to_json(f), sf_out);
    }
  });

  // ---- query ----------------------------------------------------------
  auto* query = app.add_subcommand(
      "query", "evaluate the function or the strong oracle at a point");
  std::string q_fn, q_point, q_out;
  bool q_strong = false;
  query->add_option("--fn", q_fn, "instance descriptor JSON file")
      ->required();
  query->add_option("--x", q_point, "0/1 string, coordinate 1 first")
      ->required();
  query->add_flag("--strong", q_strong, "use the path-revealing oracle");
  query->add_option("--out", q_out, "output path");
  query->callback([&] {
    FunctionInstance f = instance_from_json(load_instance_json(q_fn));
    const Point x = Point::from_string(q_point);
    json j{{"x", q_point}, {"weight", x.weight()}};
    if (q_strong) {
      j["response"] = strong_response_to_json(f.strong_query(x));
    } else {
      j["value"] = f.eval(x);
    }
    emit(j, q_out);
  });

  // ---- attack ---------------------------------------------------------
  auto* attack = app.add_subcommand(
      "attack", "run an adaptive violation search against an instance");
  std::string a_fn, a_kind = "general", a_out;
  int a_ell = 1;
  long a_budget = -1;
  double a_scale = 1.0;
  std::uint64_t a_seed = 0;
  bool a_check = false;
  attack->add_option("--fn", a_fn, "instance descriptor JSON file")
      ->required();
  attack->add_option("--kind", a_kind, "general | three-level | cwx");
  attack->add_option("--ell", a_ell, "adaptivity parameter (general)");
  attack->add_option("--budget", a_budget, "query budget (-1: default cap)");
  attack->add_option("--scale", a_scale, "probe repetition multiplier");
  attack->add_option("--seed", a_seed, "attack RNG seed");
  attack->add_flag("--check", a_check, "exit 2 unless a violation is found");
  attack->callback([&] {
    FunctionInstance f = instance_from_json(load_instance_json(a_fn));
    Rng rng(a_seed);
    AttackParams p;
    p.query_budget = a_budget;
    p.scale = a_scale;
    AttackResult r = a_kind == "general"
                         ? attack_general(f, a_ell, rng, p)
                         : a_kind == "three-level"
                               ? attack_three_level(f, rng, p)
                               : a_kind == "cwx"
                                     ? attack_cwx_skip(f, rng, p)
                                     : throw ContractError("unknown kind " +
                                                           a_kind);
    json j = attack_result_to_json(r);
    j["outcome"] = outcome_summary_to_json(r.outcome, f.regime());
    emit(j, a_out);
    if (a_check && !r.violation_found) std::exit(kCheckFailure);
  });

  // ---- distance -------------------------------------------------------
  auto* distance = app.add_subcommand(
      "distance", "distance-to-monotone estimates for an instance");
  std::string d_fn, d_mode = "exact", d_out;
  long d_trials = 10000;
  int d_direction = 0, d_exact_limit = 16;
  std::uint64_t d_seed = 0;
  bool d_check = false;
  distance->add_option("--fn", d_fn, "instance descriptor JSON file")
      ->required();
  distance->add_option("--mode", d_mode,
                       "exact | secret-fln | secret-scan | unate");
  distance->add_option("--trials", d_trials, "sampling trials");
  distance->add_option("--direction", d_direction, "direction (unate mode)");
  distance->add_option("--exact-limit", d_exact_limit,
                       "largest n allowed for the exact min-cut");
  distance->add_option("--seed", d_seed, "sampling RNG seed");
  distance->add_flag("--check", d_check, "exit 2 if the estimate is zero");
  distance->callback([&] {
    FunctionInstance f = instance_from_json(load_instance_json(d_fn));
    Rng rng(d_seed);
    json j;
    double value = 0;
    if (d_mode == "exact") {
      DistanceEstimate e = exact_distance(eval_fn(f), f.n(), d_exact_limit);
      j = distance_estimate_to_json(e);
      value = e.value;
    } else if (d_mode == "secret-fln") {
      DistanceEstimate e = secret_edge_fln_exhaustive(f);
      j = distance_estimate_to_json(e);
      value = e.value;
    } else if (d_mode == "secret-scan") {
      SecretEdgeScan s = secret_edge_scan(f, d_trials, rng);
      j = distance_estimate_to_json(s.estimate);
      j["cond_same_leaf_rate"] = s.cond_same_leaf_rate;
      j["cond_antidict_rate"] = s.cond_antidict_rate;
      j["hits"] = s.hits;
      value = s.estimate.value;
    } else if (d_mode == "unate") {
      if (d_direction < 1) throw ContractError("--direction required");
      UnateBound b = unate_bound(f, d_direction, d_trials, rng);
      j = {{"increasing_edges", b.increasing_edges},
           {"decreasing_edges", b.decreasing_edges},
           {"bound", b.bound},
           {"trials", b.trials}};
      value = b.bound;
    } else {
      throw ContractError("unknown mode " + d_mode);
    }
    j["mode"] = d_mode;
    emit(j, d_out);
    if (d_check && !(value > 0)) std::exit(kCheckFailure);
  });

  // ---- experiment / rel-experiment -------------------------------------
  auto add_experiment = [&](const char* name, const char* help,
                            const char* default_preset) {
    auto* cmd = app.add_subcommand(name, help);
    auto config = std::make_shared<std::string>();
    auto sets = std::make_shared<std::vector<std::string>>();
    auto check = std::make_shared<bool>(false);
    cmd->add_option("--config", *config, "key=value config file");
    cmd->add_option("--set", *sets, "key=value override (repeatable)");
    cmd->add_flag("--check", *check, "exit 2 if the run's verdict fails");
    cmd->callback([=] {
      std::vector<std::string> kvs{std::string("preset=") + default_preset};
      kvs.insert(kvs.end(), sets->begin(), sets->end());
      ExperimentConfig cfg = config->empty()
                                 ? parse_config(kvs)
                                 : load_config_file(*config, kvs);
      ExperimentResult res = run_experiment(cfg);
      std::cout << res.to_jsonl();
      if (*check && !res.ok) std::exit(kCheckFailure);
    });
  };
  add_experiment("experiment", "run a multi-trial experiment preset",
                 "yes-monotone");
  add_experiment("rel-experiment",
                 "run a relative-error (sandwich regime) experiment",
                 "rel-unate");

  // ---- replay -----------------------------------------------------------
  auto* replay = app.add_subcommand(
      "replay", "re-run an experiment log and verify it byte-for-byte");
  std::string r_log;
  bool r_check = false;
  replay->add_option("--log", r_log, "JSONL log file")->required();
  replay->add_flag("--check", r_check, "exit 2 on mismatch");
  replay->callback([&] {
    const bool match = replay_matches(read_file(r_log));
    std::cout << json{{"replay_match", match}}.dump() << "\n";
    if (r_check && !match) std::exit(kCheckFailure);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
