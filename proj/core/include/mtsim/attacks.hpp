#pragma once
#include <string>
#include <vector>

#include "mtsim/distance.hpp"
#include "mtsim/session.hpp"
#include "mtsim/stats.hpp"

namespace mtsim {

struct AttackParams {
  int restarts = 32;       // bootstrap attempts (queries counted)
  double scale = 1.0;      // multiplier on probe repetition counts
  double rep_scale = 1.0;  // multiplier on parallel branch repetitions
  int max_branches = 81;   // cap on parallel-repetition fan-out
  long query_budget = -1;  // -1: cap at budget_const * n^{1/2 - 1/(2L+2)}
  double budget_const = 60.0;
  long round_budget = -1;
};

struct AttackResult {
  bool violation_found = false;
  Point lower, upper;  // verified: lower < upper, f(lower)=1, f(upper)=0
  std::vector<std::string> trace;
  RoundBudget budget;
  Outcome outcome;

  AttackResult(int n, int levels, std::vector<std::uint64_t> arities)
      : outcome(n, levels, std::move(arities)) {}
};

// Ladder attack for 2l-level No instances: conquers one level per round,
// carrying pools of coordinates certified (one-sidedly) to avoid the active
// terms/clauses, then corners the secret coordinate by partition probing.
AttackResult attack_general(const FunctionInstance& f, int ell, Rng& rng,
                            const AttackParams& params = {});

// Same ladder on the three-alternation instance (odd level count; the trace
// records the level-count convention).
AttackResult attack_three_level(const FunctionInstance& f, Rng& rng,
                                const AttackParams& params = {});

// Skip attack for per-leaf-secret (CwxNo) three-level instances: jumps to the
// penultimate level and corners one leaf's secret.
AttackResult attack_cwx_skip(const FunctionInstance& f, Rng& rng,
                             const AttackParams& params = {});

struct TesterVerdict {
  bool rejected = false;
  Point lower, upper;  // witness if rejected
  long queries_used = 0;
  Outcome outcome;
  TesterVerdict(int n, int levels, std::vector<std::uint64_t> arities)
      : outcome(n, levels, std::move(arities)) {}
};

// Nonadaptive edge tester: q/2 uniform directed edges, 2 queries each.
TesterVerdict edge_tester(const FunctionInstance& f, long q, Rng& rng);
// Pair tester: distance scales 2^0..2^{log2 sqrt(n)}, uniform scale choice.
TesterVerdict pair_tester(const FunctionInstance& f, long q, Rng& rng);

// Plain-function edge tester for hand fixtures.
bool edge_tester_rejects(const EvalFn& f, int n, long q, Rng& rng);

enum class TesterKind {
  AlwaysAccept,
  Edge,
  Pair,
  AttackGeneral,
  AttackThreeLevel,
  AttackCwx,
};
const char* tester_name(TesterKind k);

struct DistinguishReport {
  int seeds = 0;
  long budget = 0;
  double yes_accept_rate = 0, no_accept_rate = 0, advantage = 0;
  double yes_ci_lo = 0, yes_ci_hi = 1, no_ci_lo = 0, no_ci_hi = 1;
  double yes_good_frac = 0, yes_safe_frac = 0;
};

// Yes/No distinguishing game: matched instance pairs share the tree seed,
// acceptance gap with Wilson intervals, safety/goodness on the Yes runs.
DistinguishReport distinguish_experiment(TesterKind tester, long budget, int n,
                                         int ell, int seeds,
                                         const Seed256& master);

}  // namespace mtsim
