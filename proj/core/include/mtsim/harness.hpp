#pragma once
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mtsim/serialize.hpp"

namespace mtsim {

// Query budget of the adaptive lower-bound regime:
// round-half-up(n^{1/2 - 1/(4l+2)} / log2 n), floored at 1.
inline long query_budget(int n, int ell) {
  const double v =
      std::pow(static_cast<double>(n), 0.5 - 1.0 / (4.0 * ell + 2.0)) /
      std::log2(static_cast<double>(n));
  const long r = static_cast<long>(std::floor(v + 0.5));
  return r < 1 ? 1 : r;
}

// Experiment configuration, assembled from key=value pairs (config file lines
// and/or command-line overrides, later pairs winning).
struct ExperimentConfig {
  std::string preset = "yes-monotone";
  int n = 16;
  int ell = 1;
  int levels = 0;  // 0: derived from the preset (2*ell, or 3)
  int trials = 10;
  long budget = -1;  // -1: preset default
  long samples = 1000;
  double scale = 1.0;
  int restarts = 32;  // attack bootstrap attempts
  int exact_limit = 14;
  int dirs = 8;              // sampled directions (rel-unate)
  std::string variant;       // optional override of the preset's variant
  std::string tester = "edge";  // distinguish preset
  int term_size = 2, clause_size = 2;  // sandwich presets
  Seed256 master_seed{};
  int threads = 0;  // 0: MTSIM_THREADS env or 1
  std::string out_jsonl, out_csv;
  std::map<std::string, std::string> raw;  // echoed into the report header
};

// Parse "key=value" pairs; unknown keys are an error. "seed" takes 64 hex
// characters.
ExperimentConfig parse_config(const std::vector<std::string>& kvs);
// Config file (key=value lines, '#' comments), then overrides on top.
ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides);

int effective_threads(const ExperimentConfig& cfg);

struct ExperimentResult {
  json header;
  std::vector<std::string> trial_lines;  // JSONL, ordered by trial index
  json aggregate;
  bool ok = true;  // preset-specific health verdict (CLI --check)

  std::string to_jsonl() const;       // header, trials, aggregate
  std::string aggregate_csv() const;  // flat key,value rows
};

// Runs cfg.trials independent trials. Trial i depends only on the config and
// the trial seed derived from (master_seed, i), so the emitted log is
// byte-identical for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Re-runs the experiment described by a previously written header line and
// checks that the regenerated log matches the given one byte for byte.
bool replay_matches(const std::string& jsonl_log);

}  // namespace mtsim
