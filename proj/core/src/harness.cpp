#include "mtsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "mtsim/relerror.hpp"

namespace mtsim {

namespace {

const char* const kKnownKeys[] = {
    "preset",  "n",          "ell",     "levels",  "trials", "budget",
    "samples", "scale",      "restarts", "exact_limit", "dirs", "variant",
    "tester",
    "term_size", "clause_size", "seed",  "threads", "out_jsonl", "out_csv"};

bool key_known(const std::string& k) {
  for (const char* known : kKnownKeys)
    if (k == known) return true;
  return false;
}

// threads and output paths affect where/how the log is produced, never its
// bytes, so they are kept out of the echoed header.
bool key_echoed(const std::string& k) {
  return k != "threads" && k != "out_jsonl" && k != "out_csv";
}

void apply_kv(ExperimentConfig& cfg, const std::string& key,
              const std::string& value) {
  if (!key_known(key))
    throw ContractError("unknown config key: " + key);
  if (key == "preset") cfg.preset = value;
  else if (key == "n") cfg.n = std::stoi(value);
  else if (key == "ell") cfg.ell = std::stoi(value);
  else if (key == "levels") cfg.levels = std::stoi(value);
  else if (key == "trials") cfg.trials = std::stoi(value);
  else if (key == "budget") cfg.budget = std::stol(value);
  else if (key == "samples") cfg.samples = std::stol(value);
  else if (key == "scale") cfg.scale = std::stod(value);
  else if (key == "restarts") cfg.restarts = std::stoi(value);
  else if (key == "exact_limit") cfg.exact_limit = std::stoi(value);
  else if (key == "dirs") cfg.dirs = std::stoi(value);
  else if (key == "variant") cfg.variant = value;
  else if (key == "tester") cfg.tester = value;
  else if (key == "term_size") cfg.term_size = std::stoi(value);
  else if (key == "clause_size") cfg.clause_size = std::stoi(value);
  else if (key == "seed") cfg.master_seed = seed_from_hex(value);
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "out_jsonl") cfg.out_jsonl = value;
  else if (key == "out_csv") cfg.out_csv = value;
  if (key_echoed(key)) cfg.raw[key] = value;
}

int resolved_levels(const ExperimentConfig& cfg) {
  if (cfg.levels > 0) return cfg.levels;
  if (cfg.preset == "attack-three-level" || cfg.preset == "attack-cwx")
    return 3;
  return 2 * cfg.ell;
}

Variant variant_from_string(const std::string& s) {
  for (Variant v : {Variant::Yes, Variant::No, Variant::CwxNo,
                    Variant::RelYes, Variant::RelNo})
    if (s == variant_name(v)) return v;
  throw ContractError("unknown variant name: " + s);
}

TesterKind tester_from_string(const std::string& s) {
  for (TesterKind k :
       {TesterKind::AlwaysAccept, TesterKind::Edge, TesterKind::Pair,
        TesterKind::AttackGeneral, TesterKind::AttackThreeLevel,
        TesterKind::AttackCwx})
    if (s == tester_name(k)) return k;
  throw ContractError("unknown tester name: " + s);
}

Point random_cube_point(int n, Rng& rng) {
  Point x(n);
  for (int i = 1; i <= n; ++i)
    if (rng.bit()) x.set_bit(static_cast<std::uint32_t>(i), true);
  return x;
}

struct TrialSeeds {
  Seed256 tree, leaf;
  std::uint64_t rng_a, rng_b;
};

TrialSeeds trial_seeds(const Seed256& master, int i) {
  return {seed_from_u64(derive_trial_seed(master, 4ull * i)),
          seed_from_u64(derive_trial_seed(master, 4ull * i + 1)),
          derive_trial_seed(master, 4ull * i + 2),
          derive_trial_seed(master, 4ull * i + 3)};
}

FunctionInstance make_middle(const ExperimentConfig& cfg, Variant v,
                             const TrialSeeds& s) {
  return FunctionInstance(
      MultiplexerSpec::middle_default(cfg.n, resolved_levels(cfg), s.tree),
      Regime::Middle, v, s.leaf);
}

SandwichBuild make_sandwich(const ExperimentConfig& cfg, Variant v,
                            const TrialSeeds& s) {
  SandwichOptions opts;
  opts.levels = resolved_levels(cfg);
  opts.term_size = cfg.term_size;
  opts.clause_size = cfg.clause_size;
  return build_sandwich_instance(cfg.n, v, s.tree, s.leaf, opts);
}

json trial_yes_monotone(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  const Variant v = cfg.variant.empty() ? Variant::Yes
                                        : variant_from_string(cfg.variant);
  FunctionInstance f =
      v == Variant::RelYes || v == Variant::RelNo
          ? std::move(make_sandwich(cfg, v, s).instance)
          : make_middle(cfg, v, s);
  Rng rng(s.rng_a);
  long violations = 0;
  for (long t = 0; t < cfg.samples; ++t) {
    Point x = random_cube_point(cfg.n, rng);
    const std::uint32_t c = 1 + static_cast<std::uint32_t>(rng.below(cfg.n));
    Point lo = x, hi = x;
    lo.set_bit(c, false);
    hi.set_bit(c, true);
    if (f.eval(lo) == 1 && f.eval(hi) == 0) ++violations;
  }
  return {{"trial", i}, {"samples", cfg.samples}, {"violations", violations}};
}

json trial_oracle_consistency(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  FunctionInstance fy = make_middle(cfg, Variant::Yes, s);
  FunctionInstance fn = make_middle(cfg, Variant::No, s);
  Rng rng(s.rng_a);
  const int r = isqrt(cfg.n);
  long checks = 0, mismatches = 0;
  for (long t = 0; t < cfg.samples; ++t) {
    const int w = cfg.n / 2 - r + static_cast<int>(rng.below(2 * r + 1));
    Point x = sample_layer(cfg.n, w, rng);
    for (const FunctionInstance* f : {&fy, &fn}) {
      ++checks;
      if (f->strong_query(x).implied_value != f->eval(x)) ++mismatches;
    }
  }
  return {{"trial", i}, {"checks", checks}, {"mismatches", mismatches}};
}

json trial_no_distance(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  FunctionInstance f = make_middle(cfg, Variant::No, s);
  const DistanceEstimate exact =
      exact_distance(eval_fn(f), cfg.n, cfg.exact_limit);
  const DistanceEstimate fln = secret_edge_fln_exhaustive(f);
  return {{"trial", i},
          {"exact_numerator", exact.numerator},
          {"secret_fln_numerator", fln.numerator},
          {"equal", exact.numerator == fln.numerator},
          {"positive", exact.numerator > 0}};
}

json trial_attack(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  Variant v = cfg.preset == "attack-cwx" ? Variant::CwxNo : Variant::No;
  if (!cfg.variant.empty()) v = variant_from_string(cfg.variant);
  FunctionInstance f = make_middle(cfg, v, s);
  Rng rng(s.rng_a);
  AttackParams p;
  p.scale = cfg.scale;
  p.rep_scale = cfg.scale;
  p.restarts = cfg.restarts;
  p.query_budget = cfg.budget;
  AttackResult r =
      cfg.preset == "attack-cwx"
          ? attack_cwx_skip(f, rng, p)
          : cfg.preset == "attack-three-level"
                ? attack_three_level(f, rng, p)
                : attack_general(f, cfg.ell, rng, p);
  json j = attack_result_to_json(r);
  j["trial"] = i;
  j["good"] = r.outcome.is_good(100.0, Regime::Middle);
  j["safe"] = r.outcome.is_safe(0.1);
  return j;
}

json trial_distinguish(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  const TesterKind tester = tester_from_string(cfg.tester);
  const long budget =
      cfg.budget >= 0 ? cfg.budget : query_budget(cfg.n, cfg.ell);
  const Variant no_variant =
      tester == TesterKind::AttackCwx ? Variant::CwxNo : Variant::No;
  FunctionInstance yes = make_middle(cfg, Variant::Yes, s);
  FunctionInstance no = make_middle(cfg, no_variant, s);
  json j{{"trial", i}};
  for (int side = 0; side < 2; ++side) {
    const FunctionInstance& inst = side == 0 ? yes : no;
    Rng rng(side == 0 ? s.rng_a : s.rng_b);
    bool accepted = true;
    bool good = true, safe = true;
    AttackParams p;
    p.scale = cfg.scale;
    p.query_budget = budget;
    switch (tester) {
      case TesterKind::AlwaysAccept:
        break;
      case TesterKind::Edge:
      case TesterKind::Pair: {
        TesterVerdict tv = tester == TesterKind::Edge
                               ? edge_tester(inst, budget, rng)
                               : pair_tester(inst, budget, rng);
        accepted = !tv.rejected;
        good = tv.outcome.is_good(100.0, Regime::Middle);
        safe = tv.outcome.is_safe(0.1);
        break;
      }
      case TesterKind::AttackGeneral:
      case TesterKind::AttackThreeLevel:
      case TesterKind::AttackCwx: {
        if (tester == TesterKind::AttackCwx && side == 0) break;
        AttackResult ar = tester == TesterKind::AttackGeneral
                              ? attack_general(inst, cfg.ell, rng, p)
                              : tester == TesterKind::AttackThreeLevel
                                    ? attack_three_level(inst, rng, p)
                                    : attack_cwx_skip(inst, rng, p);
        accepted = !ar.violation_found;
        good = ar.outcome.is_good(100.0, Regime::Middle);
        safe = ar.outcome.is_safe(0.1);
        break;
      }
    }
    if (side == 0) {
      j["yes_accept"] = accepted;
      j["yes_good"] = good;
      j["yes_safe"] = safe;
    } else {
      j["no_accept"] = accepted;
    }
  }
  return j;
}

json trial_rel_unate(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  SandwichBuild b = make_sandwich(cfg, Variant::RelNo, s);
  Rng rng(s.rng_a);
  const int secret = *b.instance.secret_of();
  std::vector<int> dirs{secret};
  while (static_cast<int>(dirs.size()) < std::min(cfg.dirs + 1, cfg.n)) {
    const int d = 1 + static_cast<int>(rng.below(cfg.n));
    if (std::find(dirs.begin(), dirs.end(), d) == dirs.end())
      dirs.push_back(d);
  }
  RelDistanceReport rep =
      rel_distance_report(b.instance, dirs, cfg.samples, rng);
  return {{"trial", i},
          {"secret_bound", rep.bounds.front().bound},
          {"best_bound", rep.best_bound},
          {"best_direction", rep.best_direction},
          {"ones_estimate", static_cast<double>(rep.ones_estimate)},
          {"disclosure", b.disclosure}};
}

json trial_rel_yes(const ExperimentConfig& cfg, int i) {
  const TrialSeeds s = trial_seeds(cfg.master_seed, i);
  SandwichBuild b = make_sandwich(cfg, Variant::RelYes, s);
  Rng rng(s.rng_a);
  long samp_bad = 0, edge_violations = 0;
  for (long t = 0; t < cfg.samples; ++t) {
    if (b.instance.eval(b.instance.samp_query(rng)) != 1) ++samp_bad;
    Point x = random_cube_point(cfg.n, rng);
    const std::uint32_t c = 1 + static_cast<std::uint32_t>(rng.below(cfg.n));
    Point lo = x, hi = x;
    lo.set_bit(c, false);
    hi.set_bit(c, true);
    if (b.instance.eval(lo) == 1 && b.instance.eval(hi) == 0)
      ++edge_violations;
  }
  return {{"trial", i},
          {"samp_bad", samp_bad},
          {"edge_violations", edge_violations},
          {"disclosure", b.disclosure}};
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& kvs) {
  ExperimentConfig cfg;
  for (const std::string& kv : kvs) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ContractError("config entries are key=value, got: " + kv);
    apply_kv(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file: " + path);
  std::vector<std::string> kvs;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    kvs.push_back(line.substr(first, last - first + 1));
  }
  kvs.insert(kvs.end(), overrides.begin(), overrides.end());
  return parse_config(kvs);
}

int effective_threads(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("MTSIM_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

std::string ExperimentResult::to_jsonl() const {
  std::string out = header.dump();
  out += '\n';
  for (const std::string& line : trial_lines) {
    out += line;
    out += '\n';
  }
  out += aggregate.dump();
  out += '\n';
  return out;
}

std::string ExperimentResult::aggregate_csv() const {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : aggregate.items())
    out << key << "," << value.dump() << "\n";
  return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  json (*trial_fn)(const ExperimentConfig&, int) = nullptr;
  if (cfg.preset == "yes-monotone") trial_fn = trial_yes_monotone;
  else if (cfg.preset == "oracle-consistency") trial_fn = trial_oracle_consistency;
  else if (cfg.preset == "no-distance") trial_fn = trial_no_distance;
  else if (cfg.preset == "attack-general" ||
           cfg.preset == "attack-three-level" || cfg.preset == "attack-cwx")
    trial_fn = trial_attack;
  else if (cfg.preset == "distinguish") trial_fn = trial_distinguish;
  else if (cfg.preset == "rel-unate") trial_fn = trial_rel_unate;
  else if (cfg.preset == "rel-yes") trial_fn = trial_rel_yes;
  else throw ContractError("unknown preset: " + cfg.preset);

  ExperimentResult res;
  res.header = {{"kind", "experiment"},
                {"preset", cfg.preset},
                {"trials", cfg.trials},
                {"config", cfg.raw}};

  res.trial_lines.assign(cfg.trials, {});
  std::vector<json> trials(cfg.trials);
  std::atomic<int> next{0};
  std::atomic<bool> had_error{false};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
      try {
        trials[i] = trial_fn(cfg, i);
      } catch (const std::exception& e) {
        trials[i] = {{"trial", i}, {"error", e.what()}};
        had_error = true;
      }
      res.trial_lines[i] = trials[i].dump();
    }
  };
  const int nthreads = std::min(effective_threads(cfg), std::max(cfg.trials, 1));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Aggregate in trial order only; independent of the execution schedule.
  json agg{{"kind", "aggregate"}, {"preset", cfg.preset},
           {"trials", cfg.trials}};
  bool ok = !had_error;
  auto count_true = [&](const char* key) {
    long c = 0;
    for (const json& t : trials) c += t.value(key, false);
    return c;
  };
  auto sum_long = [&](const char* key) {
    long c = 0;
    for (const json& t : trials) c += t.value(key, 0L);
    return c;
  };
  if (cfg.preset == "yes-monotone" || cfg.preset == "rel-yes") {
    const long viol = sum_long("violations") + sum_long("edge_violations") +
                      sum_long("samp_bad");
    agg["total_violations"] = viol;
    ok = ok && viol == 0;
  } else if (cfg.preset == "oracle-consistency") {
    const long mism = sum_long("mismatches");
    agg["total_checks"] = sum_long("checks");
    agg["total_mismatches"] = mism;
    ok = ok && mism == 0;
  } else if (cfg.preset == "no-distance") {
    const long pos = count_true("positive"), eq = count_true("equal");
    agg["positive_fraction"] =
        cfg.trials ? static_cast<double>(pos) / cfg.trials : 0.0;
    agg["equal_count"] = eq;
    ok = ok && eq == cfg.trials;
  } else if (trial_fn == trial_attack) {
    const long found = count_true("violation_found");
    agg["found_count"] = found;
    agg["found_rate"] =
        cfg.trials ? static_cast<double>(found) / cfg.trials : 0.0;
    agg["good_count"] = count_true("good");
    agg["safe_count"] = count_true("safe");
  } else if (cfg.preset == "distinguish") {
    const long ya = count_true("yes_accept"), na = count_true("no_accept");
    agg["yes_accept_rate"] =
        cfg.trials ? static_cast<double>(ya) / cfg.trials : 0.0;
    agg["no_accept_rate"] =
        cfg.trials ? static_cast<double>(na) / cfg.trials : 0.0;
    agg["advantage"] = cfg.trials
                           ? static_cast<double>(ya - na) / cfg.trials
                           : 0.0;
    const auto [ylo, yhi] = wilson_interval(ya, cfg.trials);
    const auto [nlo, nhi] = wilson_interval(na, cfg.trials);
    agg["yes_ci"] = {ylo, yhi};
    agg["no_ci"] = {nlo, nhi};
    agg["yes_good_frac"] =
        cfg.trials ? static_cast<double>(count_true("yes_good")) / cfg.trials
                   : 0.0;
    agg["yes_safe_frac"] =
        cfg.trials ? static_cast<double>(count_true("yes_safe")) / cfg.trials
                   : 0.0;
  } else if (cfg.preset == "rel-unate") {
    std::vector<double> secret_bounds;
    for (const json& t : trials)
      secret_bounds.push_back(t.value("secret_bound", 0.0));
    agg["median_secret_bound"] = median_of(secret_bounds);
    ok = ok && median_of(secret_bounds) > 0;
  }
  res.aggregate = std::move(agg);
  res.ok = ok;

  if (!cfg.out_jsonl.empty()) {
    std::ofstream out(cfg.out_jsonl);
    out << res.to_jsonl();
  }
  if (!cfg.out_csv.empty()) {
    std::ofstream out(cfg.out_csv);
    out << res.aggregate_csv();
  }
  return res;
}

bool replay_matches(const std::string& jsonl_log) {
  std::istringstream in(jsonl_log);
  std::string first;
  if (!std::getline(in, first)) return false;
  const json header = json::parse(first);
  std::vector<std::string> kvs;
  for (const auto& [key, value] : header.at("config").items())
    kvs.push_back(key + "=" + value.get<std::string>());
  ExperimentConfig cfg = parse_config(kvs);
  cfg.out_jsonl.clear();
  cfg.out_csv.clear();
  std::string log = jsonl_log;
  if (!log.empty() && log.back() != '\n') log += '\n';
  return run_experiment(cfg).to_jsonl() == log;
}

}  // namespace mtsim
