#include "mtsim/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mtsim {

namespace {

std::vector<std::uint32_t> pick(Rng& rng,
                                const std::vector<std::uint32_t>& pool,
                                std::size_t k) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::uint32_t idx : rng.choose(static_cast<std::uint32_t>(pool.size()),
                                      static_cast<std::uint32_t>(k)))
    out.push_back(pool[idx]);
  return out;
}

Point flip_at(const Point& x,
              std::initializer_list<const std::vector<std::uint32_t>*> sets) {
  Point y = x;
  for (const auto* s : sets)
    for (std::uint32_t c : *s) y.flip_inplace(c);
  return y;
}

std::vector<std::uint32_t> to_vec(const std::set<std::uint32_t>& s) {
  return {s.begin(), s.end()};
}

// Certification probes displace the query point from the balanced layer; the
// expected number of freshly activated edges grows like exp(2d/sqrt(n)) in
// the displacement d, so full sqrt(n)-sized blocks are accepted with
// vanishing frequency at bench scales. A quarter-sized block keeps the
// acceptance event at constant probability while certifying the same
// one-sided non-intersection property.
int probe_block(int r) { return std::max(1, r / 4); }

// Upward jump that activates the next level: choose the size so the expected
// number of newly satisfied terms is about 1 (maximizing the unique-
// activation probability), i.e. roughly sqrt(n) * ln(2) / 2.
int jump_block(int r) { return std::max(1, (r + 2) / 3); }

struct Branch {
  Point x;
  std::vector<std::uint32_t> c1, c0;
  int gbase = -1;
  NodeAddress leaf;  // leaf reached by x (both attacks corner at a leaf)
};

// Shared final phase: locate the secret inside c0 by partition probing
// (flip blocks of c0 against matching chunks of c1 to hold the weight),
// then walk size-sqrt(n) blocks downward from the value-0 endpoint.
void corner_secret(const FunctionInstance& f, OracleSession& sess, Rng& rng,
                   std::vector<Branch>& branches, long min_parts, int r,
                   bool exact_weight_match, AttackResult& res) {
  struct PendW {
    std::size_t branch;
    std::vector<std::uint32_t> delta;
    Point w;
    std::size_t h;
  };
  std::vector<PendW> pend;
  // Spend at most the remaining budget minus a reserve for the confirmation
  // round; a branch whose partition no longer fits is dropped whole rather
  // than risking an exhausted session before reveal.
  const long allowed = sess.budget().queries_allowed;
  long spend = allowed < 0 ? std::numeric_limits<long>::max()
                           : allowed - sess.queries_used();
  spend -= spend / 8;
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    Branch& b = branches[bi];
    if (b.c0.empty()) continue;
    // Without exact weight matching the layer slack covers the flip, so keep
    // blocks at the probe granularity: small blocks rarely disturb the
    // activation structure, which is what makes a trigger detectable.
    const std::size_t bs_max =
        exact_weight_match
            ? std::max<std::size_t>(b.c1.size(), 1)
            : static_cast<std::size_t>(probe_block(r));
    if (exact_weight_match && b.c1.empty()) continue;
    long parts = std::max<long>(
        min_parts,
        static_cast<long>((b.c0.size() + bs_max - 1) / bs_max));
    parts = std::min<long>(parts, static_cast<long>(b.c0.size()));
    if (parts > spend) continue;
    spend -= parts;
    std::vector<std::uint32_t> pool = b.c0;
    rng.shuffle(pool);
    const std::size_t base_sz = pool.size() / parts;
    const std::size_t extra = pool.size() % parts;
    std::size_t off = 0;
    for (long t = 0; t < parts; ++t) {
      const std::size_t sz = base_sz + (static_cast<std::size_t>(t) < extra);
      if (sz == 0) continue;
      std::vector<std::uint32_t> delta(pool.begin() + off,
                                       pool.begin() + off + sz);
      off += sz;
      auto csub = pick(rng, b.c1, std::min(b.c1.size(), delta.size()));
      Point w = flip_at(b.x, {&delta, &csub});
      const std::size_t h = sess.submit_strong(w);
      pend.push_back({bi, std::move(delta), std::move(w), h});
    }
  }
  if (pend.empty()) {
    res.trace.push_back("partition round: no probes possible");
    return;
  }
  sess.reveal();

  struct Cand {
    Point u;
    std::vector<std::uint32_t> delta;
  };
  std::vector<Cand> cands;
  for (PendW& pw : pend) {
    const Branch& b = branches[pw.branch];
    // Trigger: the same leaf answers with the opposite bit, i.e. the flipped
    // block contains the leaf's sensitive coordinate.
    const StrongResponse& wr = sess.response(pw.h);
    if (wr.kind != StrongResponse::Case::Leaf || !(wr.path.end() == b.leaf) ||
        wr.implied_value == b.gbase)
      continue;
    const int gw = wr.implied_value;
    const Point& u = (gw == 0) ? pw.w : b.x;
    bool delta_is_ones = true;
    for (std::uint32_t c : pw.delta)
      if (!u.bit(c)) {
        delta_is_ones = false;
        break;
      }
    if (delta_is_ones) cands.push_back({u, std::move(pw.delta)});
  }
  res.trace.push_back("partition round: " + std::to_string(cands.size()) +
                      " candidate block(s)");
  if (cands.empty()) return;

  struct PendF {
    Point lower, upper;
    std::size_t h;
  };
  std::vector<PendF> pend2;
  for (Cand& c : cands) {
    const std::size_t fsz = static_cast<std::size_t>(probe_block(r));
    for (std::size_t off2 = 0; off2 < c.delta.size(); off2 += fsz) {
      std::vector<std::uint32_t> blk(
          c.delta.begin() + off2,
          c.delta.begin() + std::min(c.delta.size(), off2 + fsz));
      Point lower = flip_at(c.u, {&blk});
      const std::size_t h = sess.submit_strong(lower);
      pend2.push_back({std::move(lower), c.u, h});
    }
  }
  sess.reveal();
  for (PendF& pf : pend2) {
    if (sess.value(pf.h) != 1) continue;
    // Re-verify with two eval calls outside the budget.
    if (f.eval(pf.lower) == 1 && f.eval(pf.upper) == 0 &&
        pf.lower.leq(pf.upper) && !(pf.lower == pf.upper)) {
      res.violation_found = true;
      res.lower = pf.lower;
      res.upper = pf.upper;
      res.trace.push_back("violation verified");
      return;
    }
  }
  res.trace.push_back("block round: no verified violation");
}

void ladder_run(const FunctionInstance& f, Rng& rng, const AttackParams& p,
                OracleSession& sess, AttackResult& res) {
  const int n = f.n(), L = f.levels(), r = isqrt(n);
  const int K = 2 * L + 2;
  if (L < 2) throw ContractError("ladder attack needs >= 2 levels");
  if (n % 2) throw ContractError("ladder attack needs even n");

  // Bootstrap: weight-n/2 start that uniquely activates level 1 only.
  Point x1(n);
  bool boot = false;
  for (int a = 0; a < p.restarts; ++a) {
    Point x = sample_layer(n, n / 2, rng);
    const std::size_t h = sess.submit_strong(x);
    sess.reveal();
    const StrongResponse& sr = sess.response(h);
    if (sr.kind == StrongResponse::Case::NoneCase && sr.path.k() == 1) {
      x1 = std::move(x);
      boot = true;
      break;
    }
  }
  if (!boot) {
    res.trace.push_back("bootstrap failed after restarts");
    return;
  }
  res.trace.push_back("E_1: bootstrap point established");

  // Round 0: certify ones that avoid the active level-1 term.
  const long t0 = round_pow(n, 0.5 - 1.0 / K, p.scale);
  const std::size_t ps = static_cast<std::size_t>(probe_block(r));
  const auto ones = x1.ones();
  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> probes0;
  for (long i = 0; i < t0; ++i) {
    auto s = pick(rng, ones, std::min<std::size_t>(ps, ones.size()));
    Point y = flip_at(x1, {&s});
    probes0.emplace_back(sess.submit_strong(y), std::move(s));
  }
  sess.reveal();
  std::set<std::uint32_t> c1set;
  for (auto& [h, s] : probes0) {
    // Accept only probes that leave the activation structure intact (same
    // unique level-1 term, nothing below): those blocks provably avoid the
    // active term.
    const StrongResponse& pr = sess.response(h);
    if (pr.kind == StrongResponse::Case::NoneCase && pr.path.k() == 1)
      c1set.insert(s.begin(), s.end());
  }
  std::vector<Branch> branches;
  branches.push_back({x1, to_vec(c1set), x1.zeros(), 1});
  res.trace.push_back("round 0: |C1|=" + std::to_string(c1set.size()));

  // Middle rounds: descend one level per batch with parallel repetitions.
  for (int j = 1; j <= L - 1; ++j) {
    const long reps = round_pow(n, 1.0 / K, p.rep_scale);
    const long mb = round_pow(n, 0.5 - (j + 1.0) / K, p.scale);
    const int expected = (j + 1) % 2;
    struct Child {
      Point x;
      std::vector<std::uint32_t> c0;
      std::size_t ha;
      std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> probes;
    };
    std::vector<Child> kids;
    for (Branch& b : branches) {
      for (long t = 0;
           t < reps && kids.size() < static_cast<std::size_t>(p.max_branches);
           ++t) {
        const std::size_t k = std::min(b.c1.size(), b.c0.size());
        auto flip1 = pick(rng, b.c1, k);
        auto c0next = pick(rng, b.c0, k);
        Child c;
        c.x = flip_at(b.x, {&flip1, &c0next});
        c.c0 = std::move(c0next);
        c.ha = sess.submit_strong(c.x);
        // Certified pools are only consumed by the *next* descent round; on
        // the final round the freed queries buy more parallel branches.
        if (j + 1 < L && !flip1.empty()) {
          for (long i = 0; i < mb; ++i) {
            auto blk =
                pick(rng, flip1, std::min<std::size_t>(ps, flip1.size()));
            Point y = flip_at(c.x, {&blk});
            c.probes.emplace_back(sess.submit_strong(y), std::move(blk));
          }
        }
        kids.push_back(std::move(c));
      }
    }
    sess.reveal();
    std::vector<Branch> next;
    const bool at_leaf = (j + 1 == L);
    for (Child& c : kids) {
      // A child is alive only if it extends the unique activation path by
      // exactly one level (reaching a leaf on the final round).
      const StrongResponse& sr = sess.response(c.ha);
      if (at_leaf) {
        if (sr.kind != StrongResponse::Case::Leaf ||
            sr.implied_value != L % 2)
          continue;
      } else {
        if (sr.kind != StrongResponse::Case::NoneCase ||
            sr.path.k() != static_cast<std::size_t>(j + 1))
          continue;
      }
      std::set<std::uint32_t> c1n;
      for (auto& [h, blk] : c.probes) {
        const StrongResponse& pr = sess.response(h);
        const bool keeps_structure =
            at_leaf ? (pr.kind == StrongResponse::Case::Leaf &&
                       pr.path.end() == sr.path.end() &&
                       pr.implied_value == expected)
                    : (pr.kind == StrongResponse::Case::NoneCase &&
                       pr.path.k() == static_cast<std::size_t>(j + 1));
        if (keeps_structure) c1n.insert(blk.begin(), blk.end());
      }
      if (at_leaf) {
        // A violating pair exists at this leaf only if the leaf negates its
        // sensitive coordinate, and then that coordinate sits on the side
        // matching the implied value (a one when the leaf reads 0, a zero
        // when it reads 1). Probing all of that side gives full coverage;
        // the +-sqrt(n) layer slack absorbs small uncompensated blocks.
        std::vector<std::uint32_t> pool =
            sr.implied_value == 0 ? c.x.ones() : c.x.zeros();
        next.push_back({std::move(c.x),
                        {},
                        std::move(pool),
                        sr.implied_value,
                        sr.path.end()});
      } else {
        next.push_back({std::move(c.x), to_vec(c1n), std::move(c.c0),
                        sr.implied_value, NodeAddress{}});
      }
    }
    branches = std::move(next);
    res.trace.push_back("E_" + std::to_string(j + 1) + ": " +
                        std::to_string(branches.size()) +
                        " live branch(es) after round " + std::to_string(j));
    if (branches.empty()) return;
  }

  corner_secret(f, sess, rng, branches, round_pow(n, 2.0 / K), r,
                /*exact_weight_match=*/false, res);
}

void cwx_run(const FunctionInstance& f, Rng& rng, const AttackParams& p,
             OracleSession& sess, AttackResult& res) {
  const int n = f.n(), r = isqrt(n);
  if (n % 2) throw ContractError("skip attack needs even n");

  // Bootstrap: x uniquely activating levels 1 and 2, nothing at level 3.
  Point x0(n);
  bool boot = false;
  for (int a = 0; a < p.restarts; ++a) {
    Point x = sample_layer(n, n / 2, rng);
    const std::size_t h = sess.submit_strong(x);
    sess.reveal();
    const StrongResponse& sr = sess.response(h);
    if (sr.kind == StrongResponse::Case::NoneCase && sr.path.k() == 2) {
      x0 = std::move(x);
      boot = true;
      break;
    }
  }
  if (!boot) {
    res.trace.push_back("bootstrap failed after restarts");
    return;
  }
  res.trace.push_back("bootstrap point established (k=2, value 0)");

  const auto a0 = x0.zeros();
  const auto a1 = x0.ones();

  // Round 0: certify zeros that avoid the active level-2 clause. Single-
  // coordinate probes: at three levels every +1 displacement risks waking a
  // leaf-level term, so larger blocks are rejected too often to be useful.
  const long t0 = round_pow(n, 1.0 / 3, p.scale);
  const std::size_t ps = static_cast<std::size_t>(probe_block(r));
  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> probes0;
  for (long i = 0; i < t0; ++i) {
    auto s = pick(rng, a0, std::min<std::size_t>(1, a0.size()));
    Point y = flip_at(x0, {&s});
    probes0.emplace_back(sess.submit_strong(y), std::move(s));
  }
  sess.reveal();
  std::set<std::uint32_t> c0set;
  for (auto& [h, s] : probes0) {
    // Accept only probes preserving the two-level activation structure:
    // those blocks provably avoid the active clause and wake no new term.
    const StrongResponse& pr = sess.response(h);
    if (pr.kind == StrongResponse::Case::NoneCase && pr.path.k() == 2)
      c0set.insert(s.begin(), s.end());
  }
  const auto c0 = to_vec(c0set);
  res.trace.push_back("round 0: |C0|=" + std::to_string(c0.size()));
  if (c0.empty()) return;

  // Round 1, repeated in parallel: jump to the leaf level by flipping
  // certified zeros up (certified blocks provably keep the clause active and
  // wake no new top-level term), then certify ones avoiding the leaf's term.
  const long reps = round_pow(n, 1.0 / 6, p.rep_scale);
  const long mb = round_pow(n, 1.0 / 6, p.scale);
  const std::size_t js = static_cast<std::size_t>(jump_block(r));
  struct Jump {
    Point y;
    std::vector<std::uint32_t> up;
    std::size_t ha;
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> probes;
  };
  std::vector<Jump> jumps;
  for (long t = 0; t < reps; ++t) {
    if (c0.size() < js) break;
    auto up = pick(rng, c0, js);
    Jump jm;
    jm.y = flip_at(x0, {&up});
    jm.up = std::move(up);
    jm.ha = sess.submit_strong(jm.y);
    for (long i = 0; i < mb; ++i) {
      auto blk = pick(rng, a1, std::min<std::size_t>(ps, a1.size()));
      Point z = flip_at(jm.y, {&blk});
      jm.probes.emplace_back(sess.submit_strong(z), std::move(blk));
    }
    jumps.push_back(std::move(jm));
  }
  sess.reveal();
  std::vector<Branch> branches;
  for (Jump& jm : jumps) {
    // The jump succeeded only if it landed on a unique leaf reading 1.
    const StrongResponse& jr = sess.response(jm.ha);
    if (jr.kind != StrongResponse::Case::Leaf || jr.implied_value != 1)
      continue;
    std::set<std::uint32_t> cset;
    for (auto& [h, blk] : jm.probes) {
      const StrongResponse& pr = sess.response(h);
      if (pr.kind == StrongResponse::Case::Leaf &&
          pr.path.end() == jr.path.end() && pr.implied_value == 1)
        cset.insert(blk.begin(), blk.end());
    }
    // Candidate secret pool: certified zeros still at 0 after the jump.
    std::vector<std::uint32_t> pool;
    for (std::uint32_t c : c0)
      if (std::find(jm.up.begin(), jm.up.end(), c) == jm.up.end())
        pool.push_back(c);
    branches.push_back(
        {std::move(jm.y), to_vec(cset), std::move(pool), 1, jr.path.end()});
  }
  res.trace.push_back("round 1: " + std::to_string(branches.size()) +
                      " live branch(es)");
  if (branches.empty()) return;

  corner_secret(f, sess, rng, branches, round_pow(n, 1.0 / 3), r,
                /*exact_weight_match=*/true, res);
}

AttackResult run_wrapped(const FunctionInstance& f, Rng& rng,
                         const AttackParams& p, double cap_exponent,
                         const char* convention,
                         void (*body)(const FunctionInstance&, Rng&,
                                      const AttackParams&, OracleSession&,
                                      AttackResult&)) {
  AttackResult res(f.n(), f.levels(), f.spec().arities());
  res.trace.push_back(convention);
  const long qcap =
      p.query_budget >= 0
          ? p.query_budget
          : static_cast<long>(std::llround(
                p.budget_const *
                std::pow(static_cast<double>(f.n()), cap_exponent)));
  OracleSession sess(f, {p.round_budget, qcap});
  try {
    body(f, rng, p, sess, res);
  } catch (const BudgetExhausted&) {
    res.trace.push_back("budget exhausted");
  }
  res.budget = sess.budget();
  res.outcome = sess.take_outcome();
  return res;
}

}  // namespace

AttackResult attack_general(const FunctionInstance& f, int ell, Rng& rng,
                            const AttackParams& params) {
  if (f.levels() != 2 * ell)
    throw ContractError("attack_general: levels != 2*ell");
  if (f.variant() == Variant::CwxNo)
    throw ContractError("attack_general does not target per-leaf secrets");
  const double K = 4.0 * ell + 2.0;
  return run_wrapped(f, rng, params, 0.5 - 1.0 / K,
                     "convention: 2l-level ladder", &ladder_run);
}

AttackResult attack_three_level(const FunctionInstance& f, Rng& rng,
                                const AttackParams& params) {
  if (f.levels() != 3)
    throw ContractError("attack_three_level needs a 3-level instance");
  return run_wrapped(f, rng, params, 0.5 - 1.0 / 8.0,
                     "convention: three-alternation (odd level count) host",
                     &ladder_run);
}

AttackResult attack_cwx_skip(const FunctionInstance& f, Rng& rng,
                             const AttackParams& params) {
  if (f.variant() != Variant::CwxNo)
    throw ContractError("attack_cwx_skip needs the CwxNo variant");
  if (f.levels() != 3)
    throw ContractError("attack_cwx_skip needs a 3-level instance");
  return run_wrapped(f, rng, params, 1.0 / 3.0,
                     "convention: per-leaf-secret skip attack", &cwx_run);
}

namespace {

Point random_point(int n, Rng& rng) {
  Point x(n);
  for (int i = 1; i <= n; ++i)
    if (rng.bit()) x.set_bit(static_cast<std::uint32_t>(i), true);
  return x;
}

}  // namespace

TesterVerdict edge_tester(const FunctionInstance& f, long q, Rng& rng) {
  const int n = f.n();
  TesterVerdict v(n, f.levels(), f.spec().arities());
  OracleSession sess(f, {-1, q});
  struct Probe {
    std::size_t hlo, hhi;
    Point lo, hi;
  };
  std::vector<Probe> probes;
  try {
    for (long t = 0; t < q / 2; ++t) {
      Point x = random_point(n, rng);
      const std::uint32_t i =
          1 + static_cast<std::uint32_t>(rng.below(n));
      Point lo = x, hi = x;
      lo.set_bit(i, false);
      hi.set_bit(i, true);
      const std::size_t hlo = sess.submit_eval(lo);
      const std::size_t hhi = sess.submit_eval(hi);
      probes.push_back({hlo, hhi, std::move(lo), std::move(hi)});
    }
    if (sess.batch_open()) sess.reveal();
    for (Probe& p : probes) {
      if (sess.value(p.hlo) == 1 && sess.value(p.hhi) == 0) {
        v.rejected = true;
        v.lower = p.lo;
        v.upper = p.hi;
        break;
      }
    }
  } catch (const BudgetExhausted&) {
  }
  v.queries_used = sess.queries_used();
  v.outcome = sess.take_outcome();
  return v;
}

TesterVerdict pair_tester(const FunctionInstance& f, long q, Rng& rng) {
  const int n = f.n(), r = isqrt(n);
  TesterVerdict v(n, f.levels(), f.spec().arities());
  int jmax = 0;
  while ((1 << (jmax + 1)) <= r) ++jmax;
  OracleSession sess(f, {-1, q});
  struct Probe {
    std::size_t hlo, hhi;
    Point lo, hi;
  };
  std::vector<Probe> probes;
  try {
    for (long t = 0; t < q / 2; ++t) {
      Point x = random_point(n, rng);
      const int scale = 1 << rng.below(jmax + 1);
      Point lo = x, hi = x;
      for (std::uint32_t c : rng.choose(n, scale)) {
        lo.set_bit(c + 1, false);
        hi.set_bit(c + 1, true);
      }
      const std::size_t hlo = sess.submit_eval(lo);
      const std::size_t hhi = sess.submit_eval(hi);
      probes.push_back({hlo, hhi, std::move(lo), std::move(hi)});
    }
    if (sess.batch_open()) sess.reveal();
    for (Probe& p : probes) {
      if (sess.value(p.hlo) == 1 && sess.value(p.hhi) == 0) {
        v.rejected = true;
        v.lower = p.lo;
        v.upper = p.hi;
        break;
      }
    }
  } catch (const BudgetExhausted&) {
  }
  v.queries_used = sess.queries_used();
  v.outcome = sess.take_outcome();
  return v;
}

bool edge_tester_rejects(const EvalFn& f, int n, long q, Rng& rng) {
  for (long t = 0; t < q / 2; ++t) {
    Point x = random_point(n, rng);
    const std::uint32_t i = 1 + static_cast<std::uint32_t>(rng.below(n));
    Point lo = x, hi = x;
    lo.set_bit(i, false);
    hi.set_bit(i, true);
    if (f(lo) == 1 && f(hi) == 0) return true;
  }
  return false;
}

const char* tester_name(TesterKind k) {
  switch (k) {
    case TesterKind::AlwaysAccept: return "always-accept";
    case TesterKind::Edge: return "edge";
    case TesterKind::Pair: return "pair";
    case TesterKind::AttackGeneral: return "attack-general";
    case TesterKind::AttackThreeLevel: return "attack-three-level";
    case TesterKind::AttackCwx: return "attack-cwx";
  }
  return "?";
}

DistinguishReport distinguish_experiment(TesterKind tester, long budget, int n,
                                         int ell, int seeds,
                                         const Seed256& master) {
  DistinguishReport rep;
  rep.seeds = seeds;
  rep.budget = budget;
  long yes_acc = 0, no_acc = 0, yes_good = 0, yes_safe = 0;
  for (int i = 0; i < seeds; ++i) {
    const Seed256 tree = seed_from_u64(derive_trial_seed(master, 4 * i));
    const Seed256 leaf = seed_from_u64(derive_trial_seed(master, 4 * i + 1));
    const int levels = tester == TesterKind::AttackThreeLevel ||
                               tester == TesterKind::AttackCwx
                           ? 3
                           : 2 * ell;
    MultiplexerSpec spec = MultiplexerSpec::middle_default(n, levels, tree);
    const Variant no_variant =
        tester == TesterKind::AttackCwx ? Variant::CwxNo : Variant::No;
    FunctionInstance yes(spec, Regime::Middle, Variant::Yes, leaf);
    FunctionInstance no(spec, Regime::Middle, no_variant, leaf);
    for (int side = 0; side < 2; ++side) {
      const FunctionInstance& inst = side == 0 ? yes : no;
      Rng rng(derive_trial_seed(master, 4 * i + 2 + side));
      bool accepted = true;
      const Outcome* out = nullptr;
      AttackParams p;
      p.query_budget = budget;
      AttackResult ar(inst.n(), inst.levels(), inst.spec().arities());
      TesterVerdict tv(inst.n(), inst.levels(), inst.spec().arities());
      switch (tester) {
        case TesterKind::AlwaysAccept:
          break;
        case TesterKind::Edge:
          tv = edge_tester(inst, budget, rng);
          accepted = !tv.rejected;
          out = &tv.outcome;
          break;
        case TesterKind::Pair:
          tv = pair_tester(inst, budget, rng);
          accepted = !tv.rejected;
          out = &tv.outcome;
          break;
        case TesterKind::AttackGeneral:
          ar = attack_general(inst, ell, rng, p);
          accepted = !ar.violation_found;
          out = &ar.outcome;
          break;
        case TesterKind::AttackThreeLevel:
          ar = attack_three_level(inst, rng, p);
          accepted = !ar.violation_found;
          out = &ar.outcome;
          break;
        case TesterKind::AttackCwx:
          if (side == 0) break;  // Yes variant carries no per-leaf secrets
          ar = attack_cwx_skip(inst, rng, p);
          accepted = !ar.violation_found;
          out = &ar.outcome;
          break;
      }
      if (side == 0) {
        yes_acc += accepted;
        if (out) {
          yes_good += out->is_good(100.0, Regime::Middle);
          yes_safe += out->is_safe(0.1);
        } else {
          ++yes_good;
          ++yes_safe;
        }
      } else {
        no_acc += accepted;
      }
    }
  }
  rep.yes_accept_rate = static_cast<double>(yes_acc) / seeds;
  rep.no_accept_rate = static_cast<double>(no_acc) / seeds;
  rep.advantage = rep.yes_accept_rate - rep.no_accept_rate;
  std::tie(rep.yes_ci_lo, rep.yes_ci_hi) = wilson_interval(yes_acc, seeds);
  std::tie(rep.no_ci_lo, rep.no_ci_hi) = wilson_interval(no_acc, seeds);
  rep.yes_good_frac = static_cast<double>(yes_good) / seeds;
  rep.yes_safe_frac = static_cast<double>(yes_safe) / seeds;
  return rep;
}

}  // namespace mtsim
