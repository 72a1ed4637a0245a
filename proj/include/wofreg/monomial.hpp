#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wofreg/kernels.hpp"

namespace wofreg {

class WeightedOrientedGraph;

using kernels::Exponent;

/// Ordered variable names of a polynomial ring. Polarised variables also
/// remember which base variable (index into the source registry) and which
/// copy (1-based) they stand for.
class VariableRegistry {
 public:
  struct Origin {
    std::size_t base;
    std::uint32_t copy;
  };

  static std::shared_ptr<const VariableRegistry> make(std::vector<std::string> names);
  static std::shared_ptr<const VariableRegistry> make_polarized(std::vector<std::string> names,
                                                                std::vector<Origin> origins);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<Origin> origin(std::size_t i) const;

  bool same_as(const VariableRegistry& other) const { return this == &other || names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<Origin> origins_;  // empty unless polarised
};

using RegistryPtr = std::shared_ptr<const VariableRegistry>;

/// x^a as a dense exponent vector over a registry of n variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial one(std::size_t num_vars) { return Monomial(num_vars); }
  static Monomial variable(std::size_t num_vars, std::size_t var, Exponent power = 1);

  std::size_t num_vars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }
  const Exponent* data() const { return exps_.data(); }
  Exponent* data() { return exps_.data(); }

  std::uint64_t degree() const;
  bool is_one() const;
  bool is_squarefree() const;
  std::vector<std::size_t> support() const;

  /// this | other
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

Monomial lcm(const Monomial& a, const Monomial& b);
/// Throws ExponentOverflow.
Monomial operator*(const Monomial& a, const Monomial& b);
/// a / gcd(a, b)
Monomial quotient(const Monomial& a, const Monomial& b);

/// Canonical generator order: total degree, then exponent vectors compared
/// lexicographically with larger leading exponents first (x^2 before xy).
bool canonical_less(const Monomial& a, const Monomial& b);

/// A monomial ideal stored as its unique minimal generating set in
/// canonical order. The zero ideal has no generators; the unit ideal has the
/// single generator 1.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(RegistryPtr reg) : reg_(std::move(reg)) {}

  static MonomialIdeal zero(RegistryPtr reg) { return MonomialIdeal(std::move(reg)); }
  static MonomialIdeal unit(RegistryPtr reg);
  static MonomialIdeal principal(RegistryPtr reg, Monomial m);

  const RegistryPtr& registry() const { return reg_; }
  std::size_t num_vars() const { return reg_->size(); }
  const std::vector<Monomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }

  /// m in I
  bool contains(const Monomial& m) const;
  /// Variables dividing some generator.
  std::vector<std::size_t> support() const;

  friend MonomialIdeal minimalize(RegistryPtr reg, std::vector<Monomial> gens);

 private:
  RegistryPtr reg_;
  std::vector<Monomial> gens_;
};

/// Divisibility-reduce, deduplicate and sort.
MonomialIdeal minimalize(RegistryPtr reg, std::vector<Monomial> gens);

/// Throws RegistryMismatch when the registries differ.
MonomialIdeal sum(const MonomialIdeal& i, const MonomialIdeal& j);
MonomialIdeal product(const MonomialIdeal& i, const MonomialIdeal& j);
MonomialIdeal intersection(const MonomialIdeal& i, const MonomialIdeal& j);
/// I^k; I^0 is the unit ideal.
MonomialIdeal power(const MonomialIdeal& i, unsigned k);
/// (I : m)
MonomialIdeal colon(const MonomialIdeal& i, const Monomial& m);
/// m * I
MonomialIdeal multiply(const MonomialIdeal& i, const Monomial& m);
/// I + (m)
MonomialIdeal add_generator(const MonomialIdeal& i, const Monomial& m);

bool ideal_equals(const MonomialIdeal& i, const MonomialIdeal& j);
inline bool operator==(const MonomialIdeal& i, const MonomialIdeal& j) { return ideal_equals(i, j); }

struct Polarization {
  MonomialIdeal ideal;
  RegistryPtr registry;
};

/// Replaces x_j^a by x_{j,1} ... x_{j,a}. The new registry holds, for each
/// base variable, as many copies as its largest exponent among the
/// generators. Copy names: base + copy, or base + "_" + copy when the base
/// already ends in a digit.
Polarization polarize(const MonomialIdeal& i);

/// I(D) = (x_i x_j^{w(x_j)} : (x_i, x_j) in E(D)) over a registry whose
/// names are the vertex ids of D.
MonomialIdeal edge_ideal(const WeightedOrientedGraph& d);
/// Same, but over `reg` (which must name every vertex of d). Used to place
/// ideals of induced subgraphs in the ambient ring.
MonomialIdeal edge_ideal(const WeightedOrientedGraph& d, RegistryPtr reg);
RegistryPtr vertex_registry(const WeightedOrientedGraph& d);

/// "x2*y2^7", "1" for the unit monomial.
std::string to_string(const Monomial& m, const VariableRegistry& reg);
/// Generators comma-separated; "0" for the zero ideal.
std::string to_string(const MonomialIdeal& i);
/// Inverse of to_string. Throws ParseError.
Monomial parse_monomial(std::string_view text, const VariableRegistry& reg);
MonomialIdeal parse_ideal(std::string_view text, RegistryPtr reg);

}  // namespace wofreg
