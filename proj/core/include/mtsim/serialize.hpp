#pragma once
#include <json.hpp>

#include "mtsim/attacks.hpp"
#include "mtsim/distance.hpp"

namespace mtsim {

using json = nlohmann::json;

// "(u1,u2,...)" (root is "()"), inverse of NodeAddress::to_string.
NodeAddress node_address_from_string(const std::string& s);

json spec_to_json(const MultiplexerSpec& spec);
MultiplexerSpec spec_from_json(const json& j);

// Instance descriptors are complete: re-loading reproduces the function
// bit-for-bit (the secret is recorded explicitly for the No variants).
json instance_to_json(const FunctionInstance& f);
FunctionInstance instance_from_json(const json& j);

json strong_response_to_json(const StrongResponse& r);
json attack_result_to_json(const AttackResult& r);
json tester_verdict_to_json(const TesterVerdict& v);
json distance_estimate_to_json(const DistanceEstimate& e);
json outcome_summary_to_json(const Outcome& o, Regime regime);
json distinguish_report_to_json(const DistinguishReport& rep);

}  // namespace mtsim
