#include "wofreg/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "wofreg/error.hpp"

namespace wofreg {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int compare_digit_runs(std::string_view a, std::string_view b) {
  const auto strip = [](std::string_view s) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return s.substr(i);
  };
  a = strip(a);
  b = strip(b);
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  const int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      if (int c = compare_digit_runs(a.substr(i, ie - i), b.substr(j, je - j)); c != 0) return c < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;  // "x01" vs "x1"
}

WeightedOrientedGraph WeightedOrientedGraph::build(
    std::vector<Vertex> vertices, const std::vector<std::pair<std::string, std::string>>& edges,
    bool normalize_sources) {
  WeightedOrientedGraph g;
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return natural_less(a.id, b.id); });
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id.empty()) throw ParseError(std::nullopt, "empty vertex id");
    if (vertices[i].weight < 1)
      throw ParseError(std::nullopt, "vertex '" + vertices[i].id + "' has weight < 1");
    if (i > 0 && vertices[i].id == vertices[i - 1].id)
      throw ParseError(std::nullopt, "duplicate vertex '" + vertices[i].id + "'");
  }
  g.vertices_ = std::move(vertices);
  const std::size_t n = g.vertices_.size();
  g.out_.resize(n);
  g.in_.resize(n);
  g.adj_.resize(n);

  for (const auto& [head, tail] : edges) {
    const auto h = g.index_of(head);
    const auto t = g.index_of(tail);
    if (!h) throw ParseError(std::nullopt, "unknown endpoint '" + head + "'");
    if (!t) throw ParseError(std::nullopt, "unknown endpoint '" + tail + "'");
    if (*h == *t) throw ParseError(std::nullopt, "self-loop at '" + head + "'");
    g.edges_.emplace_back(*h, *t);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end())
    throw ParseError(std::nullopt,
                     "duplicate edge '" + g.id(dup->first) + "->" + g.id(dup->second) + "'");

  for (const auto& [h, t] : g.edges_) {
    g.out_[h].push_back(t);
    g.in_[t].push_back(h);
    g.adj_[h].push_back(t);
    g.adj_[t].push_back(h);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.out_[v].begin(), g.out_[v].end());
    std::sort(g.in_[v].begin(), g.in_[v].end());
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  if (normalize_sources) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.is_source(v) && g.vertices_[v].weight != 1) {
        g.warnings_.push_back("source vertex '" + g.id(v) + "' declared with weight " +
                              std::to_string(g.vertices_[v].weight) + "; normalized to 1");
        g.vertices_[v].weight = 1;
      }
    }
  }
  return g;
}

std::optional<std::size_t> WeightedOrientedGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, std::string_view s) { return natural_less(v.id, s); });
  if (it != vertices_.end() && it->id == id) return static_cast<std::size_t>(it - vertices_.begin());
  return std::nullopt;
}

bool WeightedOrientedGraph::has_edge(std::size_t head, std::size_t tail) const {
  return std::binary_search(out_[head].begin(), out_[head].end(), tail);
}

bool WeightedOrientedGraph::adjacent(std::size_t u, std::size_t v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::uint32_t WeightedOrientedGraph::max_weight() const {
  std::uint32_t w = 0;
  for (const auto& v : vertices_) w = std::max(w, v.weight);
  return w;
}

std::vector<std::size_t> WeightedOrientedGraph::closed_neighborhood(std::size_t v) const {
  std::vector<std::size_t> out = adj_[v];
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

bool is_forest(const WeightedOrientedGraph& d) {
  std::vector<std::size_t> parent(d.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t u = 0; u < d.size(); ++u) {
    for (std::size_t v : d.neighbors(u)) {
      if (v < u) continue;  // each underlying edge once
      const std::size_t a = find(u), b = find(v);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

std::optional<PerfectMatching> find_leaf_perfect_matching(const WeightedOrientedGraph& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = d.degree(v);
    if (deg[v] == 0) return std::nullopt;
    if (deg[v] == 1) leaves.push(v);
  }

  std::vector<std::pair<std::size_t, std::size_t>> matched;
  while (!leaves.empty()) {
    const std::size_t v = leaves.top();
    leaves.pop();
    if (removed[v]) continue;
    if (deg[v] == 0) return std::nullopt;
    std::size_t u = n;
    for (std::size_t w : d.neighbors(v))
      if (!removed[w]) u = w;
    removed[v] = removed[u] = true;
    matched.emplace_back(u, v);
    for (std::size_t w : d.neighbors(u)) {
      if (removed[w]) continue;
      if (--deg[w] == 0) return std::nullopt;
      if (deg[w] == 1) leaves.push(w);
    }
  }
  if (std::find(removed.begin(), removed.end(), false) != removed.end()) return std::nullopt;

  PerfectMatching m;
  for (auto [a, b] : matched) {
    const bool a_leaf = d.degree(a) == 1, b_leaf = d.degree(b) == 1;
    if (!a_leaf && !b_leaf) return std::nullopt;
    std::size_t x = a, y = b;
    if (a_leaf && b_leaf) {
      // Isolated edge: the tail (sink side) is the leaf.
      if (d.has_edge(b, a) && !d.has_edge(a, b)) std::swap(x, y);
      else if (d.has_edge(a, b) && d.has_edge(b, a) && b < a) std::swap(x, y);
    } else if (a_leaf) {
      std::swap(x, y);
    }
    m.pairs.push_back({x, y});
  }
  std::sort(m.pairs.begin(), m.pairs.end(),
            [](const MatchedPair& p, const MatchedPair& q) { return p.x < q.x; });
  return m;
}

ValidationReport check_cm_hypothesis(const WeightedOrientedGraph& d) {
  ValidationReport rep;
  if (d.empty()) {
    rep.is_forest = true;
    rep.violations.push_back("graph has no vertices");
    return rep;
  }
  rep.is_forest = is_forest(d);
  if (!rep.is_forest) rep.violations.push_back("underlying graph contains a cycle");

  bool isolated = false;
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d.degree(v) == 0) {
      isolated = true;
      rep.violations.push_back("isolated vertex '" + d.id(v) + "'");
    }
  }
  if (!rep.is_forest || isolated) return rep;

  rep.matching = find_leaf_perfect_matching(d);
  if (!rep.matching) {
    rep.violations.push_back("no perfect matching in which every pair contains a leaf");
    return rep;
  }
  rep.all_matched_leaves_are_sinks = true;
  rep.weight_condition_ok = true;
  for (const auto& p : rep.matching->pairs) {
    if (!d.is_sink(p.y)) {
      rep.all_matched_leaves_are_sinks = false;
      rep.violations.push_back("matched leaf '" + d.id(p.y) + "' is not a sink (edge " + d.id(p.y) +
                               "->" + d.id(p.x) + ")");
    }
    if (d.weight(p.x) != 1) {
      rep.weight_condition_ok = false;
      rep.violations.push_back("matched vertex '" + d.id(p.x) + "' has weight " +
                               std::to_string(d.weight(p.x)) + " (must be 1)");
    }
  }
  return rep;
}

WeightedOrientedGraph induced_subgraph_by_index(const WeightedOrientedGraph& d,
                                                std::span<const std::size_t> removed) {
  std::vector<bool> gone(d.size(), false);
  for (std::size_t v : removed) {
    if (v >= d.size()) throw PreconditionError("induced_subgraph: vertex index out of range");
    gone[v] = true;
  }
  std::vector<Vertex> vs;
  for (std::size_t v = 0; v < d.size(); ++v)
    if (!gone[v]) vs.push_back(d.vertex(v));
  std::vector<std::pair<std::string, std::string>> es;
  for (const auto& [h, t] : d.edges())
    if (!gone[h] && !gone[t]) es.emplace_back(d.id(h), d.id(t));
  return WeightedOrientedGraph::build(std::move(vs), es, /*normalize_sources=*/false);
}

WeightedOrientedGraph induced_subgraph(const WeightedOrientedGraph& d,
                                       std::span<const std::string> removed) {
  std::vector<std::size_t> idx;
  for (const auto& id : removed) {
    const auto v = d.index_of(id);
    if (!v) throw PreconditionError("induced_subgraph: unknown vertex '" + id + "'");
    idx.push_back(*v);
  }
  return induced_subgraph_by_index(d, idx);
}

std::optional<PendantEdge> pendant_at(const WeightedOrientedGraph& d, const PerfectMatching& m,
                                      std::size_t t) {
  if (t >= m.size()) return std::nullopt;
  const auto& p = m.pairs[t];
  std::optional<std::size_t> z;
  for (std::size_t w : d.neighbors(p.x)) {
    if (w == p.y) continue;
    if (z) return std::nullopt;
    z = w;
  }
  if (!z) return std::nullopt;
  return PendantEdge{t, p.x, p.y, z};
}

PendantEdge pick_pendant_matched_edge(const WeightedOrientedGraph& d, const PerfectMatching& m) {
  if (m.size() < 2) throw PreconditionError("no pendant matched edge: fewer than two matched pairs");
  bool all_isolated = true;
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (auto pe = pendant_at(d, m, t)) return *pe;
    if (d.degree(m.pairs[t].x) != 1) all_isolated = false;
  }
  if (!all_isolated) throw PreconditionError("no pendant matched edge");
  return PendantEdge{0, m.pairs[0].x, m.pairs[0].y, std::nullopt};
}

}  // namespace wofreg
