#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wofreg/digraph.hpp"

namespace wofreg {

/// Simple graph on matched-pair indices: i ~ j iff the matched edges
/// {x_i, y_i} and {x_j, y_j} are adjacent in the underlying graph.
struct ConflictGraph {
  std::size_t num_pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
};

ConflictGraph conflict_graph(const WeightedOrientedGraph& d, const PerfectMatching& m);

/// Everything the regularity formula needs about D: the leaf weights
/// w(y_i) and which matched edges are adjacent. Removing matched pairs
/// (D \ {x_t, y_t}, D \ N_D[x_t]) is expressed on this object.
class ThetaInstance {
 public:
  ThetaInstance() = default;

  /// Any digraph with a leaf perfect matching; the hypothesis is not checked.
  static ThetaInstance from_matching(const WeightedOrientedGraph& d, const PerfectMatching& m);
  /// Throws HypothesisRejected unless check_cm_hypothesis(d) accepts.
  static ThetaInstance from_accepted(const WeightedOrientedGraph& d);
  /// Direct construction for tests and generators: conflicts as index pairs.
  static ThetaInstance from_parts(std::vector<std::uint32_t> weights,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& conflicts,
                                  std::vector<std::string> labels = {});

  std::size_t size() const { return weights_.size(); }
  std::uint32_t weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::size_t>& conflicts(std::size_t i) const { return adj_[i]; }
  bool conflict(std::size_t i, std::size_t j) const;
  std::uint32_t max_weight() const;

  /// The instance with the given pairs deleted (indices are renumbered).
  ThetaInstance without_pairs(std::span<const std::size_t> removed) const;

 private:
  std::vector<std::uint32_t> weights_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// A nonempty set of pairwise non-adjacent matched edges.
struct NonAdjacentFamily {
  std::vector<std::size_t> indices;   // ascending
  std::vector<std::uint32_t> weights; // w(y_i) for i in indices

  std::uint32_t max_weight() const;
  std::uint64_t weight_sum() const;
};

inline constexpr std::size_t kFamilyEnumerationCap = 24;

/// Calls `visit` once per nonempty independent set of the conflict graph,
/// in lexicographic order of the index lists. Throws EnumerationCapExceeded
/// above `cap` pairs.
void for_each_family(const ThetaInstance& inst,
                     const std::function<void(std::span<const std::size_t>)>& visit,
                     std::size_t cap = kFamilyEnumerationCap);

std::vector<NonAdjacentFamily> enumerate_families(const ThetaInstance& inst,
                                                  std::size_t cap = kFamilyEnumerationCap);

/// max over families F of (max_{i in F} w_i + 1)(k - 1) + sum_{i in F} w_i + 1,
/// by enumeration. theta(0, .) = 0, and an instance without pairs gives 0.
std::int64_t theta_enumerated(unsigned k, const ThetaInstance& inst);
/// Enumeration up to the cap, tree DP above it.
std::int64_t theta(unsigned k, const ThetaInstance& inst);
std::int64_t theta(unsigned k, const WeightedOrientedGraph& d);

/// max over families F and l in F of (w_l + 1) k + sum_{j in F, j != l} w_j.
std::int64_t theta_symmetric(unsigned k, const ThetaInstance& inst);

/// Same value as theta, by dynamic programming over the conflict forest,
/// one pass per distinct weight W restricted to families with max weight W.
std::int64_t theta_tree_dp(unsigned k, const ThetaInstance& inst);

/// For every distinct leaf weight W: the largest weight sum of a family
/// whose maximum weight is exactly W (absent if no such family). Tree DP.
std::vector<std::pair<std::uint32_t, std::uint64_t>> best_sum_by_max_weight(const ThetaInstance& inst);

/// (k - 1)(w + 1) + theta(1, D), w the largest vertex weight of D.
std::int64_t corollary_bound(unsigned k, const WeightedOrientedGraph& d);

struct RecursionCheck {
  std::int64_t theta_k = 0;           // Θ(k, D)
  std::int64_t theta_closed_nbhd = 0; // Θ(k, D \ N_D[x_t])
  std::int64_t theta_pair_removed = 0;// Θ(k, D \ {x_t, y_t})
  std::int64_t theta_prev = 0;        // Θ(k-1, D)
  std::uint32_t w_t = 0;
  bool recursion_holds = false;
  bool monotone_holds = false;
  bool ok() const { return recursion_holds && monotone_holds; }
};

/// Θ(k,D) = max{Θ(k, D\N_D[x_t]) + w(y_t), Θ(k, D\{x_t,y_t}), Θ(k-1,D) + w(y_t) + 1}
/// and Θ(k-1,D) + w(y_t) + 1 <= Θ(k,D). Throws PreconditionError unless x_t
/// has exactly one neighbour besides y_t.
RecursionCheck theta_recursion_check(const WeightedOrientedGraph& d, const PerfectMatching& m,
                                     std::size_t t, unsigned k);

/// value(k) = max over lines of slope (k - 1) + intercept, for k >= 1.
class PiecewiseLinearFunction {
 public:
  struct Line {
    std::int64_t slope;
    std::int64_t intercept;
    std::int64_t at(std::int64_t k) const { return slope * (k - 1) + intercept; }
    friend bool operator==(const Line&, const Line&) = default;
  };

  /// Range of k on which a line attains the maximum; `last` is empty for
  /// the eventual line.
  struct Regime {
    Line line;
    std::int64_t first;
    std::optional<std::int64_t> last;
  };

  PiecewiseLinearFunction() = default;
  /// Keeps only lines attaining the maximum at some integer k >= 1.
  static PiecewiseLinearFunction upper_envelope(std::vector<Line> lines);

  const std::vector<Line>& lines() const { return lines_; }
  /// Smallest k at which a line not maximal at k-1 becomes maximal.
  const std::vector<std::int64_t>& breakpoints() const { return breakpoints_; }
  const std::vector<Regime>& regimes() const { return regimes_; }
  std::int64_t value(std::int64_t k) const;
  bool empty() const { return lines_.empty(); }

  /// "4(k-1)+10 for 1 <= k <= 4; 5(k-1)+7 for k >= 4"
  std::string describe() const;
  /// {"lines":[[slope,intercept],...],"breakpoints":[...]}
  std::string to_json() const;
  static PiecewiseLinearFunction from_json(const std::string& text);

 private:
  std::vector<Line> lines_;
  std::vector<std::int64_t> breakpoints_;
  std::vector<Regime> regimes_;
};

PiecewiseLinearFunction theta_piecewise(const ThetaInstance& inst);
PiecewiseLinearFunction theta_piecewise(const WeightedOrientedGraph& d);

}  // namespace wofreg
