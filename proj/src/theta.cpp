#include "wofreg/theta.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "wofreg/error.hpp"

namespace wofreg {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

std::vector<std::size_t> pair_of_vertex(const WeightedOrientedGraph& d, const PerfectMatching& m) {
  std::vector<std::size_t> pair_of(d.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    pair_of[m.pairs[i].x] = i;
    pair_of[m.pairs[i].y] = i;
  }
  return pair_of;
}

std::int64_t family_value(unsigned k, std::uint32_t max_w, std::uint64_t sum) {
  return (static_cast<std::int64_t>(max_w) + 1) * (static_cast<std::int64_t>(k) - 1) +
         static_cast<std::int64_t>(sum) + 1;
}

}  // namespace

ConflictGraph conflict_graph(const WeightedOrientedGraph& d, const PerfectMatching& m) {
  const auto pair_of = pair_of_vertex(d, m);
  ConflictGraph g;
  g.num_pairs = m.size();
  for (std::size_t u = 0; u < d.size(); ++u) {
    for (std::size_t v : d.neighbors(u)) {
      const std::size_t pu = pair_of[u], pv = pair_of[v];
      if (pu == pv || pu == m.size() || pv == m.size()) continue;
      g.edges.emplace_back(std::min(pu, pv), std::max(pu, pv));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

// --- ThetaInstance ----------------------------------------------------------

ThetaInstance ThetaInstance::from_parts(std::vector<std::uint32_t> weights,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& conflicts,
                                        std::vector<std::string> labels) {
  ThetaInstance inst;
  const std::size_t r = weights.size();
  inst.weights_ = std::move(weights);
  if (labels.empty())
    for (std::size_t i = 0; i < r; ++i) labels.push_back(std::to_string(i + 1));
  inst.labels_ = std::move(labels);
  inst.adj_.assign(r, {});
  for (auto [i, j] : conflicts) {
    if (i >= r || j >= r || i == j) throw PreconditionError("invalid conflict pair");
    inst.adj_[i].push_back(j);
    inst.adj_[j].push_back(i);
  }
  for (auto& a : inst.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return inst;
}

ThetaInstance ThetaInstance::from_matching(const WeightedOrientedGraph& d, const PerfectMatching& m) {
  std::vector<std::uint32_t> w;
  std::vector<std::string> labels;
  for (const auto& p : m.pairs) {
    w.push_back(d.weight(p.y));
    labels.push_back(d.id(p.x));
  }
  return from_parts(std::move(w), conflict_graph(d, m).edges, std::move(labels));
}

ThetaInstance ThetaInstance::from_accepted(const WeightedOrientedGraph& d) {
  const auto rep = check_cm_hypothesis(d);
  if (!rep.accepted()) {
    std::string why = "hypothesis rejected";
    if (!rep.violations.empty()) why += ": " + rep.violations.front();
    throw HypothesisRejected(why);
  }
  return from_matching(d, *rep.matching);
}

bool ThetaInstance::conflict(std::size_t i, std::size_t j) const {
  return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

std::uint32_t ThetaInstance::max_weight() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

ThetaInstance ThetaInstance::without_pairs(std::span<const std::size_t> removed) const {
  std::vector<bool> gone(size(), false);
  for (std::size_t i : removed)
    if (i < size()) gone[i] = true;
  std::vector<std::size_t> renum(size(), size());
  std::vector<std::uint32_t> w;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size(); ++i) {
    if (gone[i]) continue;
    renum[i] = w.size();
    w.push_back(weights_[i]);
    labels.push_back(labels_[i]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j : adj_[i])
      if (i < j && !gone[i] && !gone[j]) edges.emplace_back(renum[i], renum[j]);
  return from_parts(std::move(w), edges, std::move(labels));
}

// --- families ---------------------------------------------------------------

std::uint32_t NonAdjacentFamily::max_weight() const {
  return weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
}

std::uint64_t NonAdjacentFamily::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
}

namespace {

struct FamilyWalker {
  std::size_t r;
  std::vector<std::uint64_t> nbr_mask;
  const std::function<void(std::span<const std::size_t>)>& visit;
  std::vector<std::size_t> current;

  void walk(std::size_t start, std::uint64_t blocked) {
    for (std::size_t j = start; j < r; ++j) {
      if (blocked >> j & 1u) continue;
      current.push_back(j);
      visit(current);
      walk(j + 1, blocked | nbr_mask[j]);
      current.pop_back();
    }
  }
};

}  // namespace

void for_each_family(const ThetaInstance& inst,
                     const std::function<void(std::span<const std::size_t>)>& visit, std::size_t cap) {
  const std::size_t r = inst.size();
  if (r > cap || r > 64) throw EnumerationCapExceeded(r, std::min<std::size_t>(cap, 64));
  FamilyWalker w{r, std::vector<std::uint64_t>(r, 0), visit, {}};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j : inst.conflicts(i)) w.nbr_mask[i] |= std::uint64_t{1} << j;
  w.current.reserve(r);
  w.walk(0, 0);
}

std::vector<NonAdjacentFamily> enumerate_families(const ThetaInstance& inst, std::size_t cap) {
  std::vector<NonAdjacentFamily> out;
  for_each_family(
      inst,
      [&](std::span<const std::size_t> idx) {
        NonAdjacentFamily f;
        f.indices.assign(idx.begin(), idx.end());
        for (std::size_t i : idx) f.weights.push_back(inst.weight(i));
        out.push_back(std::move(f));
      },
      cap);
  return out;
}

// --- formula ----------------------------------------------------------------

std::int64_t theta_enumerated(unsigned k, const ThetaInstance& inst) {
  if (k == 0 || inst.size() == 0) return 0;
  std::int64_t best = kNegInf;
  for_each_family(inst, [&](std::span<const std::size_t> idx) {
    std::uint32_t mw = 0;
    std::uint64_t sum = 0;
    for (std::size_t i : idx) {
      mw = std::max(mw, inst.weight(i));
      sum += inst.weight(i);
    }
    best = std::max(best, family_value(k, mw, sum));
  });
  return best;
}

std::int64_t theta(unsigned k, const ThetaInstance& inst) {
  if (inst.size() <= kFamilyEnumerationCap) return theta_enumerated(k, inst);
  return theta_tree_dp(k, inst);
}

std::int64_t theta(unsigned k, const WeightedOrientedGraph& d) {
  return theta(k, ThetaInstance::from_accepted(d));
}

std::int64_t theta_symmetric(unsigned k, const ThetaInstance& inst) {
  if (k == 0 || inst.size() == 0) return 0;
  std::int64_t best = kNegInf;
  for_each_family(inst, [&](std::span<const std::size_t> idx) {
    std::int64_t sum = 0;
    for (std::size_t i : idx) sum += inst.weight(i);
    for (std::size_t l : idx) {
      const std::int64_t wl = inst.weight(l);
      best = std::max(best, (wl + 1) * static_cast<std::int64_t>(k) + (sum - wl));
    }
  });
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> best_sum_by_max_weight(const ThetaInstance& inst) {
  const std::size_t r = inst.size();
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  if (r == 0) return out;

  // Rooted DFS order per component; the conflict graph must be a forest.
  std::vector<std::size_t> parent(r, r), order;
  std::vector<std::size_t> roots;
  std::vector<bool> seen(r, false);
  order.reserve(r);
  for (std::size_t s = 0; s < r; ++s) {
    if (seen[s]) continue;
    roots.push_back(s);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (std::size_t c : inst.conflicts(v)) {
        if (c == parent[v]) continue;
        if (seen[c]) throw PreconditionError("theta_tree_dp: conflict graph is not a forest");
        seen[c] = true;
        parent[c] = v;
        stack.push_back(c);
      }
    }
  }

  std::vector<std::uint32_t> distinct = inst.weights();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // dp[v][in][has]: best weight sum in v's subtree with v in/out of the
  // family and with/without a member of weight exactly W.
  std::vector<std::array<std::array<std::int64_t, 2>, 2>> dp(r);
  for (std::uint32_t W : distinct) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t v = *it;
      std::int64_t out0 = 0, out1 = kNegInf;
      std::int64_t in0 = kNegInf, in1 = kNegInf;
      const std::uint32_t wv = inst.weight(v);
      if (wv < W) in0 = wv;
      else if (wv == W) in1 = wv;
      for (std::size_t c : inst.conflicts(v)) {
        if (c == parent[v]) continue;
        const std::int64_t c0 = std::max(dp[c][0][0], dp[c][1][0]);
        const std::int64_t c1 = std::max(dp[c][0][1], dp[c][1][1]);
        const std::int64_t n1 = std::max(out1 + std::max(c0, c1), out0 + c1);
        out0 = out0 + c0;
        out1 = n1;
        const std::int64_t d0 = dp[c][0][0], d1 = dp[c][0][1];
        const std::int64_t m1 = std::max(in1 + std::max(d0, d1), in0 + d1);
        in0 = in0 + d0;
        in1 = m1;
        out0 = std::max(out0, kNegInf);
        out1 = std::max(out1, kNegInf);
        in0 = std::max(in0, kNegInf);
        in1 = std::max(in1, kNegInf);
      }
      dp[v] = {{{out0, out1}, {in0, in1}}};
    }
    std::int64_t without = 0, with = kNegInf;
    for (std::size_t root : roots) {
      const std::int64_t a = std::max(dp[root][0][0], dp[root][1][0]);
      const std::int64_t b = std::max(dp[root][0][1], dp[root][1][1]);
      const std::int64_t nb = std::max(with + std::max(a, b), without + b);
      without = without + a;
      with = std::max(nb, kNegInf);
    }
    if (with > kNegInf / 2) out.emplace_back(W, static_cast<std::uint64_t>(with));
  }
  return out;
}

std::int64_t theta_tree_dp(unsigned k, const ThetaInstance& inst) {
  if (k == 0 || inst.size() == 0) return 0;
  std::int64_t best = kNegInf;
  for (auto [w, s] : best_sum_by_max_weight(inst)) best = std::max(best, family_value(k, w, s));
  return best;
}

std::int64_t corollary_bound(unsigned k, const WeightedOrientedGraph& d) {
  const std::int64_t w = d.max_weight();
  return (static_cast<std::int64_t>(k) - 1) * (w + 1) + theta(1, d);
}

RecursionCheck theta_recursion_check(const WeightedOrientedGraph& d, const PerfectMatching& m,
                                     std::size_t t, unsigned k) {
  if (k == 0) throw PreconditionError("theta_recursion_check: k must be >= 1");
  const auto pe = pendant_at(d, m, t);
  if (!pe) throw PreconditionError("theta_recursion_check: x_t must have exactly one neighbour besides y_t");
  const auto pair_of = pair_of_vertex(d, m);
  const std::size_t pz = pair_of[*pe->z];

  const auto inst = ThetaInstance::from_matching(d, m);
  const std::size_t closed[] = {t, pz};
  const std::size_t single[] = {t};

  RecursionCheck rc;
  rc.w_t = d.weight(pe->y);
  rc.theta_k = theta(k, inst);
  rc.theta_closed_nbhd = theta(k, inst.without_pairs(closed));
  rc.theta_pair_removed = theta(k, inst.without_pairs(single));
  rc.theta_prev = theta(k - 1, inst);
  const std::int64_t via_leaf = rc.theta_prev + rc.w_t + 1;
  rc.recursion_holds =
      rc.theta_k == std::max({rc.theta_closed_nbhd + rc.w_t, rc.theta_pair_removed, via_leaf});
  rc.monotone_holds = via_leaf <= rc.theta_k;
  return rc;
}

}  // namespace wofreg
