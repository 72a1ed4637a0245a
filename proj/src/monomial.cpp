#include "wofreg/monomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "flat_monomials.hpp"
#include "wofreg/digraph.hpp"
#include "wofreg/error.hpp"

namespace wofreg {

namespace {

const kernels::KernelTable& k() { return kernels::active(); }

void require_same(const MonomialIdeal& i, const MonomialIdeal& j) {
  if (!i.registry()->same_as(*j.registry())) throw RegistryMismatch();
}

}  // namespace

// --- VariableRegistry -------------------------------------------------------

RegistryPtr VariableRegistry::make(std::vector<std::string> names) {
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("variable names must be unique");
  auto reg = std::make_shared<VariableRegistry>();
  reg->names_ = std::move(names);
  return reg;
}

RegistryPtr VariableRegistry::make_polarized(std::vector<std::string> names, std::vector<Origin> origins) {
  if (names.size() != origins.size()) throw PreconditionError("one origin per polarized variable");
  auto reg = std::const_pointer_cast<VariableRegistry>(make(std::move(names)));
  reg->origins_ = std::move(origins);
  return reg;
}

std::optional<std::size_t> VariableRegistry::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<VariableRegistry::Origin> VariableRegistry::origin(std::size_t i) const {
  if (origins_.empty()) return std::nullopt;
  return origins_[i];
}

// --- Monomial ---------------------------------------------------------------

Monomial Monomial::variable(std::size_t num_vars, std::size_t var, Exponent power) {
  Monomial m(num_vars);
  m.exps_[var] = power;
  return m;
}

std::uint64_t Monomial::degree() const { return k().degree(exps_.data(), exps_.size()); }

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::is_squarefree() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e <= 1; });
}

std::vector<std::size_t> Monomial::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0) s.push_back(i);
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  return k().divides(exps_.data(), other.exps_.data(), exps_.size());
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.num_vars());
  k().lcm(a.data(), b.data(), out.data(), a.num_vars());
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out(a.num_vars());
  if (!k().add(a.data(), b.data(), out.data(), a.num_vars())) throw ExponentOverflow();
  return out;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial out(a.num_vars());
  k().quotient(a.data(), b.data(), out.data(), a.num_vars());
  return out;
}

bool canonical_less(const Monomial& a, const Monomial& b) {
  const auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const auto ea = a.exponents(), eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(), std::greater<>());
}

// --- MonomialIdeal ----------------------------------------------------------

MonomialIdeal MonomialIdeal::unit(RegistryPtr reg) {
  const auto n = reg->size();
  return minimalize(std::move(reg), {Monomial::one(n)});
}

MonomialIdeal MonomialIdeal::principal(RegistryPtr reg, Monomial m) {
  return minimalize(std::move(reg), {std::move(m)});
}

bool MonomialIdeal::contains(const Monomial& m) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
}

std::vector<std::size_t> MonomialIdeal::support() const {
  std::vector<bool> used(num_vars(), false);
  for (const auto& g : gens_)
    for (std::size_t v = 0; v < g.num_vars(); ++v) used[v] = used[v] || g[v] != 0;
  std::vector<std::size_t> s;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (used[v]) s.push_back(v);
  return s;
}

MonomialIdeal minimalize(RegistryPtr reg, std::vector<Monomial> gens) {
  const std::size_t n = reg->size();
  for (const auto& g : gens)
    if (g.num_vars() != n) throw RegistryMismatch();
  // Sorting by degree first means a divisor always precedes its multiples.
  std::sort(gens.begin(), gens.end(), canonical_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  MonomialIdeal out(std::move(reg));
  detail::FlatMonomials kept(n);
  for (auto& g : gens) {
    if (kept.any_divides(g)) continue;
    kept.push_back(g);
    out.gens_.push_back(std::move(g));
  }
  return out;
}

MonomialIdeal sum(const MonomialIdeal& i, const MonomialIdeal& j) {
  require_same(i, j);
  std::vector<Monomial> gens = i.generators();
  gens.insert(gens.end(), j.generators().begin(), j.generators().end());
  return minimalize(i.registry(), std::move(gens));
}

MonomialIdeal product(const MonomialIdeal& i, const MonomialIdeal& j) {
  require_same(i, j);
  std::vector<Monomial> gens;
  gens.reserve(i.size() * j.size());
  for (const auto& f : i.generators())
    for (const auto& g : j.generators()) gens.push_back(f * g);
  return minimalize(i.registry(), std::move(gens));
}

MonomialIdeal intersection(const MonomialIdeal& i, const MonomialIdeal& j) {
  require_same(i, j);
  std::vector<Monomial> gens;
  gens.reserve(i.size() * j.size());
  for (const auto& f : i.generators())
    for (const auto& g : j.generators()) gens.push_back(lcm(f, g));
  return minimalize(i.registry(), std::move(gens));
}

MonomialIdeal power(const MonomialIdeal& i, unsigned k) {
  if (k == 0) return MonomialIdeal::unit(i.registry());
  MonomialIdeal acc = i;
  for (unsigned e = 1; e < k; ++e) acc = product(acc, i);
  return acc;
}

MonomialIdeal colon(const MonomialIdeal& i, const Monomial& m) {
  if (m.num_vars() != i.num_vars()) throw RegistryMismatch();
  std::vector<Monomial> gens;
  gens.reserve(i.size());
  for (const auto& g : i.generators()) gens.push_back(quotient(g, m));
  return minimalize(i.registry(), std::move(gens));
}

MonomialIdeal multiply(const MonomialIdeal& i, const Monomial& m) {
  if (m.num_vars() != i.num_vars()) throw RegistryMismatch();
  std::vector<Monomial> gens;
  gens.reserve(i.size());
  for (const auto& g : i.generators()) gens.push_back(g * m);
  return minimalize(i.registry(), std::move(gens));
}

MonomialIdeal add_generator(const MonomialIdeal& i, const Monomial& m) {
  if (m.num_vars() != i.num_vars()) throw RegistryMismatch();
  std::vector<Monomial> gens = i.generators();
  gens.push_back(m);
  return minimalize(i.registry(), std::move(gens));
}

bool ideal_equals(const MonomialIdeal& i, const MonomialIdeal& j) {
  require_same(i, j);
  return i.generators() == j.generators();
}

Polarization polarize(const MonomialIdeal& i) {
  const auto& reg = *i.registry();
  std::vector<Exponent> copies(reg.size(), 0);
  for (const auto& g : i.generators())
    for (std::size_t v = 0; v < reg.size(); ++v) copies[v] = std::max(copies[v], g[v]);

  std::vector<std::string> names;
  std::vector<VariableRegistry::Origin> origins;
  std::vector<std::size_t> first(reg.size(), 0);
  for (std::size_t v = 0; v < reg.size(); ++v) {
    first[v] = names.size();
    const std::string& base = reg.name(v);
    const bool digit_tail = !base.empty() && base.back() >= '0' && base.back() <= '9';
    for (std::uint32_t c = 1; c <= copies[v]; ++c) {
      names.push_back(digit_tail ? base + "_" + std::to_string(c) : base + std::to_string(c));
      origins.push_back({v, c});
    }
  }
  auto preg = VariableRegistry::make_polarized(std::move(names), std::move(origins));

  std::vector<Monomial> gens;
  for (const auto& g : i.generators()) {
    Monomial p(preg->size());
    for (std::size_t v = 0; v < reg.size(); ++v)
      for (Exponent c = 0; c < g[v]; ++c) p[first[v] + c] = 1;
    gens.push_back(std::move(p));
  }
  auto ideal = minimalize(preg, std::move(gens));
  return {std::move(ideal), std::move(preg)};
}

RegistryPtr vertex_registry(const WeightedOrientedGraph& d) {
  std::vector<std::string> names;
  for (const auto& v : d.vertices()) names.push_back(v.id);
  return VariableRegistry::make(std::move(names));
}

MonomialIdeal edge_ideal(const WeightedOrientedGraph& d, RegistryPtr reg) {
  std::vector<std::size_t> var(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) {
    const auto idx = reg->index_of(d.id(v));
    if (!idx) throw PreconditionError("registry has no variable for vertex '" + d.id(v) + "'");
    var[v] = *idx;
  }
  std::vector<Monomial> gens;
  for (const auto& [h, t] : d.edges()) {
    Monomial m(reg->size());
    m[var[h]] = 1;
    m[var[t]] = static_cast<Exponent>(d.weight(t));
    gens.push_back(std::move(m));
  }
  return minimalize(std::move(reg), std::move(gens));
}

MonomialIdeal edge_ideal(const WeightedOrientedGraph& d) { return edge_ideal(d, vertex_registry(d)); }

}  // namespace wofreg
