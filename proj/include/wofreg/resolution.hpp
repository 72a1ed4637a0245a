#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wofreg/monomial.hpp"

namespace wofreg {

class WeightedOrientedGraph;

struct OracleOptions {
  /// Largest multidegree support (number of variables) whose upper Koszul
  /// complex will be built.
  std::size_t support_cap = 22;
  /// Also compute every homology rank over F_p and flag disagreements.
  std::optional<std::uint32_t> check_prime;

  /// Defaults, with REG_ORACLE_CAP overriding the cap when set.
  static OracleOptions from_environment();
};

/// All distinct lcms of nonempty sets of minimal generators, in canonical
/// order.
struct LcmLattice {
  std::vector<Monomial> elements;
};

LcmLattice lcm_lattice(const MonomialIdeal& i);

/// A finite simplicial complex on vertices 0..n-1; faces are bitmasks and
/// the empty face (mask 0) is listed when present.
struct SimplicialComplex {
  std::size_t num_vertices = 0;
  std::vector<std::uint32_t> faces;

  /// Downward closure of the given facets (each a list of vertices).
  static SimplicialComplex from_facets(std::size_t n, const std::vector<std::vector<std::size_t>>& facets);
};

/// The upper Koszul simplicial complex K^a(I) = { b squarefree, b <= supp(a) :
/// x^{a-b} in I }. Vertex v of the complex is variable vertices[v].
struct KoszulView {
  Monomial multidegree;
  std::vector<std::size_t> vertices;
  SimplicialComplex complex;
};

/// Throws OracleInfeasible when |supp(a)| exceeds opts.support_cap.
KoszulView koszul_complex(const MonomialIdeal& i, const Monomial& a, const OracleOptions& opts = {});

/// The nerve of the cover of K^a(I) by its facets, one vertex per maximal
/// set { v : g_v < a_v } over generators g dividing a. Same reduced homology
/// as K^a(I); far smaller when few generators divide a but supp(a) is large.
SimplicialComplex koszul_nerve(const MonomialIdeal& i, const Monomial& a);

/// Dimensions of reduced homology, entry d+1 holding dim H~_d, from d = -1 up
/// to the top dimension of the complex.
struct HomologyRanks {
  std::vector<std::size_t> ranks;
  bool prime_mismatch = false;

  std::size_t at(int dim) const {
    const auto idx = static_cast<std::size_t>(dim + 1);
    return (dim < -1 || idx >= ranks.size()) ? 0 : ranks[idx];
  }
  bool acyclic() const;
};

HomologyRanks reduced_homology_ranks(const SimplicialComplex& k, std::optional<std::uint32_t> check_prime = {});

/// Graded Betti numbers of the ideal I (not of R/I).
class BettiTable {
 public:
  using Key = std::pair<int, int>;  // (homological index i, total degree j)

  void add(int i, int j, std::uint64_t rank);
  std::uint64_t at(int i, int j) const;
  const std::map<Key, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// max { j - i : beta_{i,j} != 0 }. Throws PreconditionError when empty.
  int regularity() const;
  int projective_dimension() const;

  std::string field = "Q";
  std::optional<std::uint32_t> prime;
  bool prime_mismatch = false;
  /// Set for the unit ideal, whose regularity is 0 by convention.
  bool unit_ideal = false;

  /// {"entries":[{"i":..,"j":..,"rank":..}],"field":"Q"}
  std::string to_json() const;
  static BettiTable from_json(const std::string& text);
  /// Macaulay2-style grid: rows j-i, columns i.
  std::string to_grid() const;

  friend bool operator==(const BettiTable& a, const BettiTable& b) { return a.entries_ == b.entries_; }

 private:
  std::map<Key, std::uint64_t> entries_;
};

/// beta_{i,a}(I) = dim H~_{i-1}(K^a(I)) summed over lattice multidegrees a.
/// Throws PreconditionError for the zero ideal and OracleInfeasible above the cap.
BettiTable betti_table(const MonomialIdeal& i, const OracleOptions& opts = {});

int regularity(const MonomialIdeal& i, const OracleOptions& opts = {});
/// reg(R/I) = reg(I) - 1.
inline int quotient_regularity(int ideal_regularity) { return ideal_regularity - 1; }

/// reg(I(D)^k).
int regularity_power(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts = {});

}  // namespace wofreg
