#include "mtsim/session.hpp"

namespace mtsim {

OracleSession::OracleSession(const FunctionInstance& f, RoundBudget budget,
                             bool track_outcome)
    : f_(f),
      budget_(budget),
      track_outcome_(track_outcome),
      outcome_(f.n(), f.levels(), f.spec().arities()) {}

std::size_t OracleSession::submit_strong(Point x) {
  if (budget_.queries_allowed >= 0 &&
      budget_.queries_used >= budget_.queries_allowed)
    throw BudgetExhausted("query budget exhausted");
  ++budget_.queries_used;
  pending_.push_back({std::move(x), true});
  return pending_.size() - 1;
}

std::size_t OracleSession::submit_eval(Point x) {
  if (budget_.queries_allowed >= 0 &&
      budget_.queries_used >= budget_.queries_allowed)
    throw BudgetExhausted("query budget exhausted");
  ++budget_.queries_used;
  pending_.push_back({std::move(x), false});
  return pending_.size() - 1;
}

void OracleSession::reveal() {
  if (budget_.rounds_allowed >= 0 &&
      budget_.rounds_used >= budget_.rounds_allowed)
    throw BudgetExhausted("round budget exhausted");
  ++budget_.rounds_used;
  values_.assign(pending_.size(), -1);
  responses_.assign(pending_.size(), std::nullopt);
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    const Point& x = pending_[i].x;
    if (pending_[i].strong) {
      StrongResponse r = f_.strong_query(x);
      values_[i] = r.implied_value;
      if (track_outcome_) outcome_.ingest(x, r);
      responses_[i] = std::move(r);
    } else if (f_.in_layers(x.weight())) {
      // Membership answer, but the ledger records the oracle-level view.
      StrongResponse r = f_.strong_query(x);
      values_[i] = r.implied_value;
      if (track_outcome_) outcome_.ingest(x, r);
    } else {
      values_[i] = f_.eval(x);  // truncation region: value is forced
    }
  }
  pending_.clear();
}

const StrongResponse& OracleSession::response(std::size_t handle) const {
  const auto& r = responses_.at(handle);
  if (!r) throw ContractError("no strong response for this handle");
  return *r;
}

}  // namespace mtsim
