#include "mtsim/outcome.hpp"

#include <algorithm>
#include <cmath>

namespace mtsim {

namespace {

int popcount_words(const std::vector<std::uint64_t>& w) {
  int c = 0;
  for (std::uint64_t v : w) c += __builtin_popcountll(v);
  return c;
}

bool sorted_subset(const std::vector<int>& sub, const std::vector<int>& sup) {
  return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
}

}  // namespace

void Outcome::ingest(const Point& x, const StrongResponse& r) {
  if (x.n() != n_) throw ContractError("outcome dimension mismatch");
  if (query_index_.count(x)) {
    ++duplicate_warnings_;
    return;
  }
  const auto& path = r.path.path;
  if (path.empty() || !path.front().is_root())
    throw ContractError("response path must start at the root");
  for (std::size_t j = 1; j < path.size(); ++j) {
    if (path[j].level() != j || !path[j - 1].is_ancestor_of(path[j]))
      throw ContractError("response path is not a root chain");
  }
  const int qi = static_cast<int>(queries_.size());
  queries_.push_back(x);
  query_index_[x] = qi;

  // Path nodes u^1..u^k enter P; every sibling of a traversed edge enters R.
  for (std::size_t j = 1; j < path.size(); ++j) {
    p_[path[j]].push_back(qi);
    r_[path[j - 1]].push_back(
        {qi, RRecord::Kind::AllExcept, path[j].comps.back(), 0});
  }
  const NodeAddress& end = path.back();
  switch (r.kind) {
    case StrongResponse::Case::Leaf:
      if (end.level() != static_cast<std::size_t>(levels_))
        throw ContractError("Leaf case must end at a leaf");
      rho_[end][qi] = r.leaf_bit;
      break;
    case StrongResponse::Case::NoneCase:
      if (end.level() >= static_cast<std::size_t>(levels_))
        r_[end];  // leaves have no child edges; nothing to record
      else
        r_[end].push_back({qi, RRecord::Kind::All, 0, 0});
      break;
    case StrongResponse::Case::MultiCase: {
      const std::uint32_t a1 = r.path.a1, a2 = r.path.a2;
      if (!(a1 < a2) || a1 == 0)
        throw ContractError("MultiCase needs 0 < a1 < a2");
      p_[end.child(a1)].push_back(qi);
      p_[end.child(a2)].push_back(qi);
      r_[end].push_back({qi, RRecord::Kind::BelowExcept, a1, a2});
      if (end.level() == static_cast<std::size_t>(levels_) - 1) {
        if (!r.has_pair_bits)
          throw ContractError("penultimate MultiCase must carry leaf bits");
        rho_[end.child(a1)][qi] = r.b1;
        rho_[end.child(a2)][qi] = r.b2;
      }
      break;
    }
  }
}

bool Outcome::r_contains(const EdgeAddress& e, int query_index) const {
  auto it = r_.find(e.child.parent());
  if (it == r_.end()) return false;
  const std::uint32_t a = e.child.comps.back();
  for (const RRecord& rec : it->second) {
    if (rec.query != query_index) continue;
    switch (rec.kind) {
      case RRecord::Kind::All: return true;
      case RRecord::Kind::AllExcept:
        if (a != rec.a1) return true;
        break;
      case RRecord::Kind::BelowExcept:
        if (a < rec.a2 && a != rec.a1) return true;
        break;
    }
  }
  return false;
}

std::vector<int> Outcome::r_set(const EdgeAddress& e) const {
  std::vector<int> out;
  auto it = r_.find(e.child.parent());
  if (it == r_.end()) return out;
  const std::uint32_t a = e.child.comps.back();
  for (const RRecord& rec : it->second) {
    const bool hit =
        rec.kind == RRecord::Kind::All ||
        (rec.kind == RRecord::Kind::AllExcept && a != rec.a1) ||
        (rec.kind == RRecord::Kind::BelowExcept && a < rec.a2 && a != rec.a1);
    if (hit) out.push_back(rec.query);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CoordinateSets Outcome::coordinate_sets() const {
  CoordinateSets cs;
  const std::size_t words = (n_ + 63) / 64;
  std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
  if (n_ % 64) full.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
  for (const auto& [u, qs] : p_) {
    if (qs.empty()) continue;
    CoordinateSets::Entry e;
    e.a1 = full;
    e.a0 = full;
    for (int qi : qs) {
      const auto& w = queries_[qi].words();
      for (std::size_t i = 0; i < words; ++i) {
        e.a1[i] &= w[i];
        e.a0[i] &= ~w[i];
      }
    }
    for (std::size_t i = 0; i < words; ++i) e.a0[i] &= full[i];
    e.size1 = popcount_words(e.a1);
    e.size0 = popcount_words(e.a0);
    cs.per_node.emplace(u, std::move(e));
  }
  return cs;
}

DangerReport Outcome::danger() const {
  DangerReport dr;
  const std::size_t words = (n_ + 63) / 64;
  std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
  if (n_ % 64) full.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
  dr.global.assign(words, 0);
  const CoordinateSets cs = coordinate_sets();
  for (const auto& [u, e] : cs.per_node) {
    if (u.level() != static_cast<std::size_t>(levels_)) continue;
    std::vector<std::uint64_t> d(words);
    for (std::size_t i = 0; i < words; ++i)
      d[i] = full[i] & ~(e.a0[i] | e.a1[i]);
    // Union into every ancestor's B_u (root included via the empty address).
    NodeAddress anc = u;
    for (;;) {
      anc = anc.parent();
      auto& b = dr.subtree_union.try_emplace(anc, words).first->second;
      for (std::size_t i = 0; i < words; ++i) b[i] |= d[i];
      if (anc.is_root()) break;
    }
    for (std::size_t i = 0; i < words; ++i) dr.global[i] |= d[i];
    dr.leaf_danger.emplace(u, std::move(d));
  }
  dr.global_size = popcount_words(dr.global);
  return dr;
}

bool Outcome::rho_all_constant() const {
  for (const auto& [u, vals] : rho_) {
    if (vals.empty()) continue;
    const int first = vals.begin()->second;
    for (const auto& [qi, b] : vals)
      if (b != first) return false;
  }
  return true;
}

double Outcome::b_eps_fraction() const {
  return static_cast<double>(danger().global_size) / n_;
}

bool Outcome::is_safe(double tau) const {
  if (tau <= 0 || tau >= 1) throw ContractError("tau must be in (0,1)");
  if (!rho_all_constant()) return false;
  return danger().global_size <= tau * n_;
}

bool Outcome::is_good(double c, Regime regime) const {
  if (c <= 0) throw ContractError("slack constant must be positive");
  if (!rho_all_constant()) return false;
  const CoordinateSets cs = coordinate_sets();
  const double logn = std::log2(static_cast<double>(n_));
  for (const auto& [u, e] : cs.per_node) {
    const double pu = static_cast<double>(p_.at(u).size());
    double slack, target;
    if (regime == Regime::Middle) {
      slack = pu * c * std::sqrt(static_cast<double>(n_)) * logn;
      target = n_ / 2.0;
    } else {
      slack = pu * c * logn;
      target = (u.level() % 2 == 1) ? 3.0 * n_ / 4.0 : n_ / 4.0;
    }
    if (u.level() % 2 == 1) {
      if (e.size1 < target - slack) return false;
    } else if (!u.is_root()) {
      if (e.size0 < target - slack) return false;
    }
  }
  return true;
}

void Outcome::check_facts(Regime regime) const {
  // P-chain containment and branching mass.
  std::vector<int> root_level_total;
  std::map<NodeAddress, int> child_mass;
  for (const auto& [v, qs] : p_) {
    if (!std::is_sorted(qs.begin(), qs.end()))
      throw ContractError("P set not sorted");
    if (v.level() >= 2) {
      auto it = p_.find(v.parent());
      if (it == p_.end() || !sorted_subset(qs, it->second))
        throw ContractError("Fact violation: P_v not within parent P_u");
    }
    if (!v.is_root())
      child_mass[v.parent()] += static_cast<int>(qs.size());
  }
  for (const auto& [u, mass] : child_mass) {
    const std::size_t cap =
        u.is_root() ? 2 * queries_.size() : 2 * p_.at(u).size();
    if (static_cast<std::size_t>(mass) > cap)
      throw ContractError("Fact violation: child P mass exceeds 2|P_u|");
  }
  std::size_t nonempty = 0;
  for (const auto& [u, qs] : p_)
    if (!qs.empty()) ++nonempty;
  if (nonempty > static_cast<std::size_t>(levels_ + 1) * queries_.size())
    throw ContractError("Fact violation: too many nonempty P sets");

  const CoordinateSets cs = coordinate_sets();
  const int r = isqrt(n_);
  for (const auto& [u, e] : cs.per_node) {
    for (std::size_t i = 0; i < e.a0.size(); ++i)
      if (e.a0[i] & e.a1[i])
        throw ContractError("Fact violation: A sets intersect");
    if (regime == Regime::Middle) {
      if (2 * e.size0 > n_ + 2 * r || 2 * e.size1 > n_ + 2 * r)
        throw ContractError("Fact violation: A-set size cap (middle)");
    } else {
      if (e.size0 > n_ / 4 || e.size1 > 3 * n_ / 4 + 1)
        throw ContractError("Fact violation: A-set size cap (sandwich)");
    }
    if (u.level() >= 2) {
      auto it = cs.per_node.find(u.parent());
      if (it != cs.per_node.end()) {
        for (std::size_t i = 0; i < e.a0.size(); ++i) {
          if (it->second.a0[i] & ~e.a0[i])
            throw ContractError("Fact violation: A0 ancestor containment");
          if (it->second.a1[i] & ~e.a1[i])
            throw ContractError("Fact violation: A1 ancestor containment");
        }
      }
    }
  }
  // B_u inside the complement of A_{u,0} | A_{u,1} for nonempty P_u.
  const DangerReport dr = danger();
  for (const auto& [u, b] : dr.subtree_union) {
    auto it = cs.per_node.find(u);
    if (it == cs.per_node.end()) continue;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] & (it->second.a0[i] | it->second.a1[i]))
        throw ContractError("Fact violation: B_u meets the agreed sets");
  }
  // rho defined exactly on P_u at leaves.
  for (const auto& [u, vals] : rho_) {
    auto it = p_.find(u);
    if (it == p_.end())
      throw ContractError("rho at a leaf with empty P");
    std::vector<int> keys;
    for (const auto& [qi, b] : vals) keys.push_back(qi);
    if (keys != it->second)
      throw ContractError("rho domain differs from P_u");
  }
}

}  // namespace mtsim
