#include "mtsim/serialize.hpp"

#include <sstream>

namespace mtsim {

NodeAddress node_address_from_string(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ContractError("node address must look like (u1,u2,...)");
  NodeAddress u;
  std::string body = s.substr(1, s.size() - 2);
  if (body.empty()) return u;
  std::istringstream in(body);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size() || v == 0)
      throw ContractError("node address components are positive integers");
    u.comps.push_back(static_cast<std::uint32_t>(v));
  }
  return u;
}

json spec_to_json(const MultiplexerSpec& spec) {
  json j;
  j["n"] = spec.n();
  j["levels"] = spec.levels();
  j["arities"] = spec.arities();
  j["term_size"] = spec.term_size();
  j["clause_size"] = spec.clause_size();
  j["tree_seed"] = seed_to_hex(spec.master_seed());
  if (spec.has_overrides()) {
    json ov = json::object();
    for (const auto& [node, lits] : spec.overrides())
      ov[node.to_string()] = lits;
    j["edge_overrides"] = std::move(ov);
  }
  return j;
}

MultiplexerSpec spec_from_json(const json& j) {
  MultiplexerSpec spec(j.at("n").get<int>(), j.at("levels").get<int>(),
                       j.at("arities").get<std::vector<std::uint64_t>>(),
                       j.at("term_size").get<int>(),
                       j.at("clause_size").get<int>(),
                       seed_from_hex(j.at("tree_seed").get<std::string>()));
  if (j.contains("edge_overrides"))
    for (const auto& [key, lits] : j.at("edge_overrides").items())
      spec.override_edge(node_address_from_string(key),
                         lits.get<LiteralList>());
  return spec;
}

json instance_to_json(const FunctionInstance& f) {
  json j;
  j["spec"] = spec_to_json(f.spec());
  j["regime"] = regime_name(f.regime());
  j["variant"] = variant_name(f.variant());
  j["leaf_seed"] = seed_to_hex(f.leaf_seed());
  if (auto s = f.secret_of()) j["secret"] = *s;
  return j;
}

namespace {

Regime regime_from_name(const std::string& s) {
  if (s == regime_name(Regime::Middle)) return Regime::Middle;
  if (s == regime_name(Regime::Sandwich)) return Regime::Sandwich;
  throw ContractError("unknown regime name: " + s);
}

Variant variant_from_name(const std::string& s) {
  for (Variant v : {Variant::Yes, Variant::No, Variant::CwxNo,
                    Variant::RelYes, Variant::RelNo})
    if (s == variant_name(v)) return v;
  throw ContractError("unknown variant name: " + s);
}

json point_json(const Point& p) { return p.n() ? json(p.to_string()) : json(); }

}  // namespace

FunctionInstance instance_from_json(const json& j) {
  std::optional<int> secret;
  if (j.contains("secret")) secret = j.at("secret").get<int>();
  return FunctionInstance(
      spec_from_json(j.at("spec")),
      regime_from_name(j.at("regime").get<std::string>()),
      variant_from_name(j.at("variant").get<std::string>()),
      seed_from_hex(j.at("leaf_seed").get<std::string>()), secret);
}

json strong_response_to_json(const StrongResponse& r) {
  json j;
  json path = json::array();
  for (const NodeAddress& u : r.path.path) path.push_back(u.to_string());
  j["path"] = std::move(path);
  switch (r.kind) {
    case StrongResponse::Case::Leaf:
      j["case"] = "leaf";
      j["leaf_bit"] = r.leaf_bit;
      break;
    case StrongResponse::Case::NoneCase:
      j["case"] = "none-activated";
      break;
    case StrongResponse::Case::MultiCase:
      j["case"] = "multi-activated";
      j["a1"] = r.a1();
      j["a2"] = r.a2();
      if (r.has_pair_bits) {
        j["b1"] = r.b1;
        j["b2"] = r.b2;
      }
      break;
  }
  j["value"] = r.implied_value;
  return j;
}

json attack_result_to_json(const AttackResult& r) {
  json j;
  j["violation_found"] = r.violation_found;
  if (r.violation_found) {
    j["lower"] = point_json(r.lower);
    j["upper"] = point_json(r.upper);
  }
  j["queries_used"] = r.budget.queries_used;
  j["rounds_used"] = r.budget.rounds_used;
  j["trace"] = r.trace;
  return j;
}

json tester_verdict_to_json(const TesterVerdict& v) {
  json j;
  j["rejected"] = v.rejected;
  if (v.rejected) {
    j["lower"] = point_json(v.lower);
    j["upper"] = point_json(v.upper);
  }
  j["queries_used"] = v.queries_used;
  return j;
}

json distance_estimate_to_json(const DistanceEstimate& e) {
  json j;
  j["value"] = e.value;
  switch (e.kind) {
    case DistanceKind::Exact: j["kind"] = "exact"; break;
    case DistanceKind::MatchingLowerBound:
      j["kind"] = "matching-lower-bound";
      break;
    case DistanceKind::SampledEdgeLowerBound:
      j["kind"] = "sampled-edge-lower-bound";
      break;
  }
  if (e.kind != DistanceKind::SampledEdgeLowerBound)
    j["numerator"] = e.numerator;
  if (e.trials) j["trials"] = e.trials;
  return j;
}

json outcome_summary_to_json(const Outcome& o, Regime regime) {
  json j;
  j["queries"] = o.queries().size();
  j["duplicate_warnings"] = o.duplicate_warnings();
  j["nonempty_nodes"] = o.p_sets().size();
  j["danger_fraction"] = o.b_eps_fraction();
  j["rho_constant"] = o.rho_all_constant();
  j["safe"] = o.is_safe(0.1);
  j["good"] = o.is_good(100.0, regime);
  return j;
}

json distinguish_report_to_json(const DistinguishReport& rep) {
  json j;
  j["seeds"] = rep.seeds;
  j["budget"] = rep.budget;
  j["yes_accept_rate"] = rep.yes_accept_rate;
  j["no_accept_rate"] = rep.no_accept_rate;
  j["advantage"] = rep.advantage;
  j["yes_ci"] = {rep.yes_ci_lo, rep.yes_ci_hi};
  j["no_ci"] = {rep.no_ci_lo, rep.no_ci_hi};
  j["yes_good_frac"] = rep.yes_good_frac;
  j["yes_safe_frac"] = rep.yes_safe_frac;
  return j;
}

}  // namespace mtsim
