#include "wofreg/resolution.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "flat_monomials.hpp"
#include "wofreg/digraph.hpp"
#include "wofreg/error.hpp"
#include "wofreg/linear_rank.hpp"
#include "wofreg/parallel.hpp"

namespace wofreg {

namespace {

constexpr std::size_t kMaxComplexVertices = 30;

struct ExponentHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (Exponent e : m.exponents()) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

int sign_of_removal(std::uint32_t face, unsigned vertex) {
  // (-1)^(number of face vertices below `vertex`)
  const std::uint32_t below = face & ((1u << vertex) - 1u);
  return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

OracleOptions OracleOptions::from_environment() {
  OracleOptions o;
  if (const char* env = std::getenv("REG_ORACLE_CAP")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) o.support_cap = static_cast<std::size_t>(v);
  }
  return o;
}

LcmLattice lcm_lattice(const MonomialIdeal& i) {
  LcmLattice out;
  if (i.is_zero()) return out;
  const auto& gens = i.generators();
  std::unordered_set<Monomial, ExponentHash> seen(gens.begin(), gens.end());
  std::vector<Monomial> frontier(gens.begin(), gens.end());
  // Every lcm of a generator subset is reached by joining one generator at a time.
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        if (g.divides(e)) continue;
        Monomial l = lcm(e, g);
        if (seen.insert(l).second) next.push_back(std::move(l));
      }
    }
    frontier = std::move(next);
  }
  out.elements.assign(seen.begin(), seen.end());
  std::sort(out.elements.begin(), out.elements.end(), canonical_less);
  return out;
}

SimplicialComplex SimplicialComplex::from_facets(std::size_t n, const std::vector<std::vector<std::size_t>>& facets) {
  if (n > kMaxComplexVertices) throw PreconditionError("simplicial complex too large");
  std::vector<bool> in(std::size_t{1} << n, false);
  for (const auto& f : facets) {
    std::uint32_t mask = 0;
    for (std::size_t v : f) mask |= 1u << v;
    // all subsets of mask
    for (std::uint32_t s = mask;; s = (s - 1) & mask) {
      in[s] = true;
      if (s == 0) break;
    }
  }
  SimplicialComplex k;
  k.num_vertices = n;
  for (std::uint32_t s = 0; s < in.size(); ++s)
    if (in[s]) k.faces.push_back(s);
  return k;
}

KoszulView koszul_complex(const MonomialIdeal& i, const Monomial& a, const OracleOptions& opts) {
  KoszulView view;
  view.multidegree = a;
  view.vertices = a.support();
  const std::size_t s = view.vertices.size();
  if (s > opts.support_cap || s > kMaxComplexVertices) throw OracleInfeasible(s, opts.support_cap);
  view.complex.num_vertices = s;

  detail::FlatMonomials relevant(a.num_vars());
  for (const auto& g : i.generators())
    if (g.divides(a)) relevant.push_back(g);

  Monomial shifted = a;
  const std::uint32_t full = s == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << s) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    for (std::size_t v = 0; v < s; ++v)
      shifted[view.vertices[v]] = static_cast<Exponent>(a[view.vertices[v]] - ((mask >> v) & 1u));
    if (relevant.any_divides(shifted)) view.complex.faces.push_back(mask);
    if (mask == full) break;
  }
  return view;
}

namespace {

// Facets of K^a as masks over the support of a, maximal and deduplicated.
// An empty result means a is itself a generator (the complex is {0}).
std::vector<std::uint32_t> koszul_facets(const MonomialIdeal& i, const Monomial& a,
                                         const std::vector<std::size_t>& vertices) {
  std::vector<std::uint32_t> sets;
  for (const auto& g : i.generators()) {
    if (!g.divides(a)) continue;
    std::uint32_t mask = 0;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (g[vertices[v]] < a[vertices[v]]) mask |= 1u << v;
    if (mask != 0) sets.push_back(mask);
  }
  std::sort(sets.begin(), sets.end(), [](auto x, auto y) { return std::popcount(x) > std::popcount(y); });
  std::vector<std::uint32_t> facets;
  for (auto m : sets)
    if (std::none_of(facets.begin(), facets.end(), [&](auto f) { return (m & f) == m; })) facets.push_back(m);
  return facets;
}

SimplicialComplex nerve_of(const std::vector<std::uint32_t>& facets) {
  if (facets.size() > kMaxComplexVertices) throw PreconditionError("simplicial complex too large");
  SimplicialComplex k;
  k.num_vertices = facets.size();
  k.faces.push_back(0);
  // Depth-first over subsets in increasing vertex order, pruning once the
  // common intersection is empty.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (subset, intersection)
  for (std::size_t v = 0; v < facets.size(); ++v) stack.emplace_back(1u << v, facets[v]);
  while (!stack.empty()) {
    const auto [set, meet] = stack.back();
    stack.pop_back();
    k.faces.push_back(set);
    for (std::size_t v = static_cast<std::size_t>(std::bit_width(set)); v < facets.size(); ++v)
      if (const auto m = meet & facets[v]) stack.emplace_back(set | (1u << v), m);
  }
  return k;
}

}  // namespace

SimplicialComplex koszul_nerve(const MonomialIdeal& i, const Monomial& a) {
  const auto facets = koszul_facets(i, a, a.support());
  if (facets.empty()) {
    SimplicialComplex k;
    if (i.contains(a)) k.faces.push_back(0);
    return k;
  }
  return nerve_of(facets);
}

bool HomologyRanks::acyclic() const {
  return std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r == 0; });
}

HomologyRanks reduced_homology_ranks(const SimplicialComplex& k, std::optional<std::uint32_t> check_prime) {
  HomologyRanks out;
  if (k.faces.empty()) return out;  // the void complex has no reduced homology

  int top = -1;
  for (auto f : k.faces) top = std::max(top, std::popcount(f) - 1);
  // by_dim[d+1] = sorted faces of dimension d
  std::vector<std::vector<std::uint32_t>> by_dim(static_cast<std::size_t>(top + 2));
  for (auto f : k.faces) by_dim[static_cast<std::size_t>(std::popcount(f))].push_back(f);
  for (auto& v : by_dim) std::sort(v.begin(), v.end());

  // rank_q[d+1] = rank of boundary from dimension d to d-1 (d >= 0)
  const std::size_t levels = by_dim.size();
  std::vector<std::size_t> rank_q(levels + 1, 0), rank_p(levels + 1, 0);
  for (std::size_t hi = 1; hi < levels; ++hi) {
    const auto& cols = by_dim[hi];
    const auto& rows = by_dim[hi - 1];
    if (cols.empty() || rows.empty()) continue;
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::uint32_t f = cols[c];
      for (unsigned v = 0; v < k.num_vertices; ++v) {
        if (!(f >> v & 1u)) continue;
        const std::uint32_t facet = f & ~(1u << v);
        auto it = std::lower_bound(rows.begin(), rows.end(), facet);
        if (it == rows.end() || *it != facet)
          throw PreconditionError("simplicial complex is not closed under taking faces");
        m(static_cast<std::size_t>(it - rows.begin()), c) = sign_of_removal(f, v);
      }
    }
    rank_q[hi] = rank_rational(m);
    if (check_prime) rank_p[hi] = rank_mod_prime(m, *check_prime);
  }

  out.ranks.resize(levels, 0);
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    // H~_d = ker(boundary_d) / im(boundary_{d+1}), lvl = d + 1
    const std::size_t f = by_dim[lvl].size();
    out.ranks[lvl] = f - rank_q[lvl] - rank_q[lvl + 1];
    if (check_prime && f - rank_p[lvl] - rank_p[lvl + 1] != out.ranks[lvl]) out.prime_mismatch = true;
  }
  while (!out.ranks.empty() && out.ranks.back() == 0) out.ranks.pop_back();
  return out;
}

// --- BettiTable -------------------------------------------------------------

void BettiTable::add(int i, int j, std::uint64_t rank) {
  if (rank != 0) entries_[{i, j}] += rank;
}

std::uint64_t BettiTable::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

int BettiTable::regularity() const {
  if (entries_.empty()) throw PreconditionError("regularity of an empty Betti table is undefined");
  int r = entries_.begin()->first.second - entries_.begin()->first.first;
  for (const auto& [key, v] : entries_) r = std::max(r, key.second - key.first);
  return r;
}

int BettiTable::projective_dimension() const {
  int p = 0;
  for (const auto& [key, v] : entries_) p = std::max(p, key.first);
  return p;
}

std::string BettiTable::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& [key, v] : entries_) j["entries"].push_back({{"i", key.first}, {"j", key.second}, {"rank", v}});
  j["field"] = field;
  if (prime) {
    j["prime"] = *prime;
    j["prime_mismatch"] = prime_mismatch;
  }
  return j.dump();
}

BettiTable BettiTable::from_json(const std::string& text) {
  BettiTable t;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& e : j.at("entries"))
      t.add(e.at("i").get<int>(), e.at("j").get<int>(), e.at("rank").get<std::uint64_t>());
    t.field = j.value("field", std::string("Q"));
    if (j.contains("prime")) {
      t.prime = j.at("prime").get<std::uint32_t>();
      t.prime_mismatch = j.value("prime_mismatch", false);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::nullopt, std::string("malformed Betti table JSON: ") + e.what());
  }
  return t;
}

std::string BettiTable::to_grid() const {
  if (entries_.empty()) return "(empty)\n";
  int lo = regularity(), hi = lo;
  for (const auto& [key, v] : entries_) lo = std::min(lo, key.second - key.first);
  const int pd = projective_dimension();
  std::ostringstream os;
  os << std::setw(8) << "i:";
  for (int i = 0; i <= pd; ++i) os << std::setw(6) << i;
  os << '\n';
  for (int r = lo; r <= hi; ++r) {
    os << std::setw(7) << r << ':';
    for (int i = 0; i <= pd; ++i) {
      const auto v = at(i, r + i);
      if (v) os << std::setw(6) << v;
      else os << std::setw(6) << '.';
    }
    os << '\n';
  }
  return os.str();
}

// --- oracle -----------------------------------------------------------------

BettiTable betti_table(const MonomialIdeal& i, const OracleOptions& opts) {
  if (i.is_zero()) throw PreconditionError("Betti table of the zero ideal is undefined");
  BettiTable table;
  table.prime = opts.check_prime;
  if (i.is_unit()) {
    table.add(0, 0, 1);
    table.unit_ideal = true;
    return table;
  }

  const auto lattice = lcm_lattice(i);
  const auto& elems = lattice.elements;
  for (const auto& a : elems) {
    const auto s = a.support().size();
    if (s > opts.support_cap) throw OracleInfeasible(s, opts.support_cap);
  }

  struct Slot {
    HomologyRanks h;
    int degree = 0;
  };
  std::vector<Slot> slots(elems.size());
  parallel_for(elems.size(), [&](std::size_t idx) {
    const auto& a = elems[idx];
    slots[idx].degree = static_cast<int>(a.degree());
    const auto vertices = a.support();
    const auto facets = koszul_facets(i, a, vertices);
    if (facets.empty()) {  // a is a minimal generator
      slots[idx].h.ranks = {1};
      return;
    }
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << vertices.size()) - 1);
    if (facets.front() == full) return;  // full simplex: x^(a - supp(a)) in I
    std::uint32_t common = full;
    for (auto f : facets) common &= f;
    if (common != 0) return;  // every facet shares a vertex, so K^a is a cone
    if (facets.size() < vertices.size()) {
      slots[idx].h = reduced_homology_ranks(nerve_of(facets), opts.check_prime);
    } else {
      const auto view = koszul_complex(i, a, opts);
      slots[idx].h = reduced_homology_ranks(view.complex, opts.check_prime);
    }
  });

  for (const auto& s : slots) {
    for (std::size_t lvl = 0; lvl < s.h.ranks.size(); ++lvl)
      table.add(static_cast<int>(lvl), s.degree, s.h.ranks[lvl]);  // beta_{i,a} = H~_{i-1}, lvl = i
    table.prime_mismatch = table.prime_mismatch || s.h.prime_mismatch;
  }
  return table;
}

int regularity(const MonomialIdeal& i, const OracleOptions& opts) { return betti_table(i, opts).regularity(); }

int regularity_power(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts) {
  return regularity(power(edge_ideal(d), k), opts);
}

}  // namespace wofreg
