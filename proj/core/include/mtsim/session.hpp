#pragma once
#include <optional>
#include <vector>

#include "mtsim/outcome.hpp"

namespace mtsim {

struct RoundBudget {
  long rounds_allowed = -1;   // -1 = unlimited
  long queries_allowed = -1;  // -1 = unlimited
  long rounds_used = 0;
  long queries_used = 0;
};

// Two-phase oracle access enforcing round discipline (Def-2.1 style): a
// batch's queries are all fixed before any of its answers become visible.
// Every submission counts against the query budget (duplicates included);
// the outcome ledger dedups internally.
class OracleSession {
 public:
  OracleSession(const FunctionInstance& f, RoundBudget budget,
                bool track_outcome = true);

  // Queue a strong-oracle query for the current batch.
  std::size_t submit_strong(Point x);
  // Queue a membership query (testers). Answer is just f(x); in-layer points
  // still feed the outcome ledger via the strong oracle's view.
  std::size_t submit_eval(Point x);

  // Close the batch: answers all queued queries, advances the round counter.
  void reveal();

  bool batch_open() const { return !pending_.empty(); }
  // Answers of the last revealed batch.
  int value(std::size_t handle) const { return values_.at(handle); }
  const StrongResponse& response(std::size_t handle) const;

  const RoundBudget& budget() const { return budget_; }
  long queries_used() const { return budget_.queries_used; }
  long rounds_used() const { return budget_.rounds_used; }

  const FunctionInstance& instance() const { return f_; }
  const Outcome& outcome() const { return outcome_; }
  Outcome take_outcome() { return std::move(outcome_); }

 private:
  struct Pending {
    Point x;
    bool strong;
  };
  const FunctionInstance& f_;
  RoundBudget budget_;
  bool track_outcome_;
  Outcome outcome_;
  std::vector<Pending> pending_;
  std::vector<int> values_;
  std::vector<std::optional<StrongResponse>> responses_;
};

}  // namespace mtsim
