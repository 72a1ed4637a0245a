#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wofreg/digraph.hpp"
#include "wofreg/monomial.hpp"
#include "wofreg/resolution.hpp"

namespace wofreg {

struct ForestGenSpec {
  std::size_t r = 1;
  std::uint32_t max_weight = 3;
  std::uint64_t seed = 0;
  /// Probability that x_i (i >= 2) is joined to an earlier x_j.
  double density = 0.5;
};

/// Internal vertices x1..xr of weight 1, pendant sinks yi with x_i -> y_i and
/// weights in [1, max_weight], plus a random forest on the x's with random
/// orientations. Deterministic in the seed.
WeightedOrientedGraph random_cm_forest(const ForestGenSpec& spec);

/// Every accepted forest built from r matched pairs x_i -> y_i: all labelled
/// forests on x1..xr, every orientation of their edges, every y-weight
/// assignment in [1, max_weight]^r. Calls f for each graph in a fixed order.
void for_each_cm_forest(std::size_t r, std::uint32_t max_weight,
                        const std::function<void(const WeightedOrientedGraph&)>& f);
std::vector<WeightedOrientedGraph> exhaustive_cm_forests(std::size_t r, std::uint32_t max_weight);

struct IdentityResult {
  std::string name;
  bool holds = false;
};

struct LemmaOutcome {
  std::vector<IdentityResult> identities;
  bool all_hold() const;
};

/// Evaluates the five colon/intersection identities attached to a pendant
/// matched edge t (index into the leaf matching) in the ambient ring of D.
/// Throws PreconditionError if D is rejected, k == 0, or t is not pendant.
LemmaOutcome check_lemma_identities(const WeightedOrientedGraph& d, std::size_t t, unsigned k);

/// Regularity with the zero ideal mapped to nullopt (minus infinity).
std::optional<int> regularity_or_none(const MonomialIdeal& i, const OracleOptions& opts = {});

/// All seven short-exact-sequence inequalities for 0 -> A -> B -> C -> 0.
/// nullopt stands for the zero module.
bool ses_inequalities_hold(std::optional<int> a, std::optional<int> b, std::optional<int> c);

struct CorollarySides {
  int reg_power = 0;
  std::int64_t bound = 0;
  bool holds() const { return reg_power <= bound; }
};

/// reg(I(D)^k) next to (k-1)(w+1) + reg(I(D)), w the largest vertex weight.
/// Throws OracleInfeasible.
CorollarySides corollary_sides(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts = {});

struct BoundsOutcome {
  /// reg(I(D\y)^k) <= max{reg(I(D\y)^(k-1)) + 2, reg(I(D\N[x])^k) + 1, reg(I(D\{x,y})^k)}
  bool deletion_bound = false;
  /// reg(I(D)^k) <= (k-1)(w+1) + reg(I(D))
  bool corollary_bound = false;
  bool corollary_equality = false;
  /// SES 0 -> J cap K -> J + K (direct sum) -> J + K with J = x y^w I(D)^(k-1), K = I(D\y)^k.
  bool ses_holds = false;
  bool skipped = false;
  std::string reason;

  bool ok() const { return skipped || (deletion_bound && corollary_bound && ses_holds); }
};

BoundsOutcome check_regularity_bounds(const WeightedOrientedGraph& d, std::size_t t, unsigned k,
                                      const OracleOptions& opts = {});

struct SplittingOutcome {
  bool holds = false;
  bool ses_holds = false;
  bool skipped = false;
  std::string reason;
};

/// beta_{i,j}(I1 + I2) = beta_{i,j}(I1) + beta_{i,j}(I2) + beta_{i-1,j}(I1 cap I2) for all (i, j).
/// Throws PreconditionError unless G(I1 + I2) is the disjoint union of G(I1) and G(I2).
SplittingOutcome betti_splitting_check(const MonomialIdeal& i1, const MonomialIdeal& i2,
                                       const OracleOptions& opts = {});

/// The split I(D)^k = I1 + I2 with I2 = ((x_t y_t^w)^k), after polarization.
std::pair<MonomialIdeal, MonomialIdeal> polarized_power_split(const WeightedOrientedGraph& d, std::size_t t,
                                                              unsigned k);

using ThetaFn = std::function<std::int64_t(unsigned, const WeightedOrientedGraph&)>;

struct EquivalenceRow {
  std::string instance;
  unsigned k = 0;
  std::int64_t theta = 0;
  std::optional<std::int64_t> oracle;
  bool match = false;
  bool skipped = false;
  std::string reason;
  double seconds = 0;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  std::size_t lemma_checks = 0;
  std::size_t lemma_failures = 0;
  std::size_t bound_checks = 0;
  std::size_t bound_failures = 0;
  std::size_t monotonicity_checks = 0;
  std::size_t monotonicity_failures = 0;
  /// Text form of the first failing graph and the k it failed at.
  std::optional<std::string> counterexample;
  std::optional<unsigned> counterexample_k;

  std::size_t mismatches() const;
  std::size_t skipped() const;
  std::size_t failures() const { return mismatches() + lemma_failures + bound_failures + monotonicity_failures; }
  bool passed() const { return failures() == 0; }
  void append(const EquivalenceReport& other);
};

/// Rows k = 1..k_max of theta(k, D) against regularity_power(D, k).
/// Throws HypothesisRejected when D fails the hypothesis.
EquivalenceReport formula_vs_oracle(const WeightedOrientedGraph& d, unsigned k_max, const std::string& instance,
                                    const OracleOptions& opts = {}, const ThetaFn& theta_fn = {});

/// Deleting any matched pair never raises theta(k, .) nor the oracle value.
/// Returns the number of violated comparisons.
std::size_t monotonicity_violations(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts = {});

struct SuiteOptions {
  std::size_t r_max = 3;
  unsigned k_max = 2;
  std::uint32_t max_weight = 3;
  std::uint64_t seed = 7;
  std::size_t count = 100;
  bool lemmas = true;
  bool bounds = false;
  bool monotonicity = false;
  OracleOptions oracle;
  /// Formula under test; defaults to theta.
  ThetaFn theta_fn;
};

/// Every forest from for_each_cm_forest with r = 1..r_max.
EquivalenceReport run_exhaustive_suite(const SuiteOptions& opts);
/// `count` forests from random_cm_forest with r drawn from 1..r_max.
EquivalenceReport run_random_suite(const SuiteOptions& opts);

}  // namespace wofreg
