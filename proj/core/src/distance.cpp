#include "mtsim/distance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace mtsim {

namespace {

// Dinic max-flow on a unit-capacity-fringe network. Capacities are small
// (0/1/"infinite"), node count up to 2^exact_limit + 2.
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

  void add_edge(int from, int to, long long cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      it_ = head_;
      long long f;
      while ((f = dfs(s, t, kInf)) > 0) flow += f;
    }
    return flow;
  }

 private:
  static constexpr long long kInf = 1LL << 60;
  struct Arc {
    int to;
    int next;
    long long cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long long dfs(int u, int t, long long limit) {
    if (u == t || limit == 0) return limit;
    for (int& a = it_[u]; a != -1; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[u] + 1) {
        const long long f = dfs(arc.to, t, std::min(limit, arc.cap));
        if (f > 0) {
          arc.cap -= f;
          arcs_[a ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

DistanceEstimate fln_bound(const EvalFn& f, int n,
                           const std::vector<ViolationPair>& pairs) {
  std::set<Point> used;
  for (const ViolationPair& p : pairs) {
    if (!(p.x.leq(p.y)) || p.x == p.y)
      throw ContractError("fln_bound: pair not strictly increasing");
    if (f(p.x) != 1 || f(p.y) != 0)
      throw ContractError("fln_bound: pair does not violate monotonicity");
    if (!used.insert(p.x).second || !used.insert(p.y).second)
      throw ContractError("fln_bound: pairs share a vertex");
  }
  DistanceEstimate e;
  e.kind = DistanceKind::MatchingLowerBound;
  e.numerator = pairs.size();
  e.value = std::ldexp(static_cast<double>(pairs.size()), -n);
  return e;
}

DistanceEstimate exact_distance(const EvalFn& f, int n, int exact_limit) {
  if (n > exact_limit)
    throw ContractError("exact_distance: n exceeds exact_limit");
  if (n < 1 || n > 26) throw ContractError("exact_distance: n out of range");
  const std::uint64_t size = std::uint64_t{1} << n;
  const int src = static_cast<int>(size), snk = src + 1;
  Dinic g(static_cast<int>(size) + 2);
  std::vector<std::uint8_t> val(size);
  for (std::uint64_t m = 0; m < size; ++m)
    val[m] = static_cast<std::uint8_t>(f(Point::from_mask(n, m)));
  for (std::uint64_t m = 0; m < size; ++m) {
    if (val[m]) g.add_edge(src, static_cast<int>(m), 1);
    else g.add_edge(static_cast<int>(m), snk, 1);
    // Covering arcs x -> x|e_i enforce that the chosen 1-set is upward closed.
    for (int i = 0; i < n; ++i) {
      if (!(m & (std::uint64_t{1} << i)))
        g.add_edge(static_cast<int>(m),
                   static_cast<int>(m | (std::uint64_t{1} << i)),
                   1LL << 40);
    }
  }
  const long long cut = g.max_flow(src, snk);
  DistanceEstimate e;
  e.kind = DistanceKind::Exact;
  e.numerator = static_cast<unsigned long long>(cut);
  e.value = std::ldexp(static_cast<double>(cut), -n);
  return e;
}

std::vector<ViolatingEdge> all_violating_edges(const EvalFn& f, int n) {
  if (n > 20) throw ContractError("exhaustive edge scan: n too large");
  std::vector<ViolatingEdge> out;
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint8_t> val(size);
  for (std::uint64_t m = 0; m < size; ++m)
    val[m] = static_cast<std::uint8_t>(f(Point::from_mask(n, m)));
  for (std::uint64_t m = 0; m < size; ++m) {
    for (int i = 0; i < n; ++i) {
      if (m & (std::uint64_t{1} << i)) continue;
      const std::uint64_t up = m | (std::uint64_t{1} << i);
      if (val[m] == 1 && val[up] == 0)
        out.push_back({Point::from_mask(n, m),
                       static_cast<std::uint32_t>(i + 1)});
    }
  }
  return out;
}

std::vector<ViolationPair> violating_edge_matching(const EvalFn& f, int n) {
  std::vector<ViolationPair> pairs;
  std::set<std::uint64_t> used;
  for (const ViolatingEdge& e : all_violating_edges(f, n)) {
    const std::uint64_t lo = e.lower.to_mask();
    const std::uint64_t hi = lo | (std::uint64_t{1} << (e.coord - 1));
    if (used.count(lo) || used.count(hi)) continue;
    used.insert(lo);
    used.insert(hi);
    Point y = e.lower;
    y.flip_inplace(e.coord);
    pairs.push_back({e.lower, y});
  }
  return pairs;
}

SecretEdgeScan secret_edge_scan(const FunctionInstance& f, long trials,
                                Rng& rng) {
  const auto secret = f.secret_of();
  if (!secret)
    throw ContractError("secret_edge_scan needs a No/RelNo instance");
  const int n = f.n();
  const int s = *secret;
  const int r = isqrt(n);
  const int w_lo = n / 2 - r, w_hi = n / 2 + r - 1;
  const int strata = w_hi - w_lo + 1;

  std::vector<long> tr(strata, 0), hits(strata, 0);
  long same_leaf = 0, antidict = 0;
  for (long t = 0; t < trials; ++t) {
    const int w = w_lo + static_cast<int>(rng.below(strata));
    // Uniform x with x_s = 0 at weight w: sample on the other n-1 coords.
    const Point base = sample_layer(n - 1, w, rng);
    Point x(n);
    for (int i = 1; i <= n - 1; ++i)
      if (base.bit_unchecked(i))
        x.set_bit(i < s ? i : i + 1, true);
    ++tr[w - w_lo];

    const GammaResult gx = gamma(f.spec(), x);
    if (gx.kind != GammaResult::Kind::Leaf) continue;
    Point xs = x;
    xs.flip_inplace(static_cast<std::uint32_t>(s));
    const GammaResult gy = gamma(f.spec(), xs);
    if (gy.kind != GammaResult::Kind::Leaf || !(gy.leaf == gx.leaf)) continue;
    ++same_leaf;
    if (!f.leaf_is_antidictator(gx.leaf)) continue;
    ++antidict;
    if (f.eval(x) != 1 || f.eval(xs) != 0)
      throw ContractError("secret_edge_scan: counted edge fails to violate");
    ++hits[w - w_lo];
  }

  long double total_edges = 0;
  long total_hits = 0;
  for (int j = 0; j < strata; ++j) {
    total_hits += hits[j];
    if (tr[j] == 0) continue;
    total_edges += static_cast<long double>(hits[j]) / tr[j] *
                   static_cast<long double>(binomial(n - 1, w_lo + j));
  }
  SecretEdgeScan out;
  out.trials = trials;
  out.hits = total_hits;
  out.cond_same_leaf_rate = static_cast<double>(same_leaf) / trials;
  out.cond_antidict_rate = static_cast<double>(antidict) / trials;
  out.estimate.kind = DistanceKind::SampledEdgeLowerBound;
  out.estimate.trials = trials;
  out.estimate.value =
      static_cast<double>(total_edges / std::pow(2.0L, static_cast<long double>(n)));
  return out;
}

DistanceEstimate secret_edge_fln_exhaustive(const FunctionInstance& f) {
  const auto secret = f.secret_of();
  if (!secret)
    throw ContractError("secret_edge_fln_exhaustive needs a No/RelNo instance");
  const int n = f.n();
  if (n > 20) throw ContractError("exhaustive edge scan: n too large");
  const int s = *secret;
  const std::uint64_t sbit = std::uint64_t{1} << (s - 1);
  unsigned long long count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (m & sbit) continue;
    if (f.eval(Point::from_mask(n, m)) == 1 &&
        f.eval(Point::from_mask(n, m | sbit)) == 0)
      ++count;
  }
  DistanceEstimate e;
  e.kind = DistanceKind::MatchingLowerBound;
  e.numerator = count;
  e.value = std::ldexp(static_cast<double>(count), -n);
  return e;
}

UnateBound unate_bound(const FunctionInstance& f, int i, long trials,
                       Rng& rng) {
  if (f.regime() != Regime::Sandwich)
    throw ContractError("unate_bound needs a sandwich (two-layer) instance");
  const int n = f.n();
  if (i < 1 || i > n) throw ContractError("direction out of [n]");
  const int lo = 3 * n / 4;
  const int ws[3] = {lo - 1, lo, lo + 1};
  const long per = std::max<long>(1, trials / 3);

  long double e1 = 0, e0 = 0;
  for (int j = 0; j < 3; ++j) {
    const int w = ws[j];
    if (w < 0 || w + 1 > n) continue;
    long c1 = 0, c0 = 0;
    for (long t = 0; t < per; ++t) {
      const Point base = sample_layer(n - 1, w, rng);
      Point x(n);
      for (int k = 1; k <= n - 1; ++k)
        if (base.bit_unchecked(k))
          x.set_bit(k < i ? k : k + 1, true);
      Point xu = x;
      xu.flip_inplace(static_cast<std::uint32_t>(i));
      const int a = f.eval(x), b = f.eval(xu);
      if (a == 0 && b == 1) ++c1;
      if (a == 1 && b == 0) ++c0;
    }
    const long double layer =
        static_cast<long double>(binomial(n - 1, w));
    e1 += static_cast<long double>(c1) / per * layer;
    e0 += static_cast<long double>(c0) / per * layer;
  }
  UnateBound out;
  out.trials = trials;
  out.increasing_edges = static_cast<double>(e1);
  out.decreasing_edges = static_cast<double>(e0);
  const long double ones = f.samp_info().valid
                               ? f.samp_info().ones_estimate
                               : std::pow(2.0L, static_cast<long double>(n));
  out.bound = static_cast<double>(std::min(e1, e0) / ones);
  return out;
}

}  // namespace mtsim
