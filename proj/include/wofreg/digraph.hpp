#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wofreg {

/// Orders ids with embedded numbers numerically: "x2" < "x10".
bool natural_less(std::string_view a, std::string_view b);

struct Vertex {
  std::string id;
  std::uint32_t weight = 1;
};

/// A weighted oriented graph D. Vertices are kept in natural id order and
/// addressed by their position; an edge (head, tail) means head -> tail.
/// Immutable once built.
class WeightedOrientedGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  WeightedOrientedGraph() = default;

  /// Validates and builds. When `normalize_sources` is set, every vertex
  /// with empty in-neighbourhood gets weight 1 and a warning is recorded if
  /// that changed its declared weight. Throws ParseError (without a line
  /// number) on invalid input.
  static WeightedOrientedGraph build(std::vector<Vertex> vertices,
                                     const std::vector<std::pair<std::string, std::string>>& edges,
                                     bool normalize_sources = true);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t v) const { return vertices_[v]; }
  const std::string& id(std::size_t v) const { return vertices_[v].id; }
  std::uint32_t weight(std::size_t v) const { return vertices_[v].weight; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Sorted by (head, tail).
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t head, std::size_t tail) const;

  const std::vector<std::size_t>& out_neighbors(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_neighbors(std::size_t v) const { return in_[v]; }
  /// Neighbours in the underlying simple graph.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  bool adjacent(std::size_t u, std::size_t v) const;

  bool is_source(std::size_t v) const { return in_[v].empty(); }
  bool is_sink(std::size_t v) const { return out_[v].empty(); }
  std::uint32_t max_weight() const;

  /// N_D[v]: v together with its in- and out-neighbours.
  std::vector<std::size_t> closed_neighborhood(std::size_t v) const;

  /// Normalisation notes recorded at build/parse time.
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_, in_, adj_;
  std::vector<std::string> warnings_;
};

/// One matched edge {x, y} of the leaf perfect matching; y is the leaf.
/// Indices refer to the graph the matching was computed on.
struct MatchedPair {
  std::size_t x;
  std::size_t y;
  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Pairs sorted by the id of x.
struct PerfectMatching {
  std::vector<MatchedPair> pairs;
  std::size_t size() const { return pairs.size(); }
};

struct ValidationReport {
  bool is_forest = false;
  std::optional<PerfectMatching> matching;
  bool all_matched_leaves_are_sinks = false;
  bool weight_condition_ok = false;
  std::vector<std::string> violations;

  bool accepted() const {
    return is_forest && matching.has_value() && all_matched_leaves_are_sinks && weight_condition_ok;
  }
};

bool is_forest(const WeightedOrientedGraph& d);

/// The unique perfect matching of the underlying forest whose every pair
/// contains a degree-one vertex, if any. For a component that is a single
/// edge both ends are leaves; the tail of the edge is taken as the leaf.
/// Precondition: is_forest(d).
std::optional<PerfectMatching> find_leaf_perfect_matching(const WeightedOrientedGraph& d);

/// Checks: forest without isolated vertices, leaf perfect matching exists,
/// every matched leaf is a sink, and every matched internal vertex has
/// weight 1.
ValidationReport check_cm_hypothesis(const WeightedOrientedGraph& d);

/// D \ removed. Weights are carried over as-is. Throws PreconditionError on
/// an unknown id.
WeightedOrientedGraph induced_subgraph(const WeightedOrientedGraph& d,
                                       std::span<const std::string> removed);
WeightedOrientedGraph induced_subgraph_by_index(const WeightedOrientedGraph& d,
                                                std::span<const std::size_t> removed);

/// A matched pair (x_t, y_t) with N(x_t) = {y_t, z}. When every component
/// is a single matched edge no such pair exists and the result is the
/// degenerate "isolated matched edge" marker: `z` is empty.
struct PendantEdge {
  std::size_t pair = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  std::optional<std::size_t> z;

  bool isolated() const { return !z.has_value(); }
};

/// Smallest x_t (in id order) with exactly one non-matched neighbour.
/// Precondition: accepted hypothesis with at least two matched pairs.
PendantEdge pick_pendant_matched_edge(const WeightedOrientedGraph& d, const PerfectMatching& m);

/// The pendant description of pair `t`, or nullopt if x_t does not have
/// exactly one neighbour besides y_t.
std::optional<PendantEdge> pendant_at(const WeightedOrientedGraph& d, const PerfectMatching& m,
                                      std::size_t t);

}  // namespace wofreg
