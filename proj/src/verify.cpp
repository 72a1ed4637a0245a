#include "wofreg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>

#include "wofreg/error.hpp"
#include "wofreg/graph_io.hpp"
#include "wofreg/parallel.hpp"
#include "wofreg/theta.hpp"

namespace wofreg {

namespace {

// Portable draws from mt19937_64 (the standard distributions are
// implementation-defined, which would break cross-platform determinism).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string xname(std::size_t i) { return "x" + std::to_string(i + 1); }
std::string yname(std::size_t i) { return "y" + std::to_string(i + 1); }

WeightedOrientedGraph assemble(std::size_t r, const std::vector<std::uint32_t>& y_weights,
                               const std::vector<std::pair<std::size_t, std::size_t>>& internal) {
  std::vector<Vertex> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (std::size_t i = 0; i < r; ++i) {
    vs.push_back({xname(i), 1});
    vs.push_back({yname(i), y_weights[i]});
    es.emplace_back(xname(i), yname(i));
  }
  for (const auto& [a, b] : internal) es.emplace_back(xname(a), xname(b));
  return WeightedOrientedGraph::build(std::move(vs), es);
}

PerfectMatching accepted_matching(const WeightedOrientedGraph& d) {
  auto rep = check_cm_hypothesis(d);
  if (!rep.accepted()) {
    std::string why = "hypothesis rejected";
    if (!rep.violations.empty()) why += ": " + rep.violations.front();
    throw HypothesisRejected(why + " (run validate for the full report)");
  }
  return *rep.matching;
}

Monomial var_power(const VariableRegistry& reg, const std::string& id, Exponent e) {
  return Monomial::variable(reg.size(), *reg.index_of(id), e);
}

std::string ideal_key(const MonomialIdeal& i) {
  std::string key;
  for (const auto& n : i.registry()->names()) key += n + ',';
  return key + '|' + to_string(i);
}

// Oracle values shared across a suite run; internal edge orientations do
// not change the ideal, so many instances repeat.
class RegularityCache {
 public:
  std::optional<int> get(const MonomialIdeal& i, const OracleOptions& opts) {
    if (i.is_zero()) return std::nullopt;
    const auto key = ideal_key(i);
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    const int r = regularity(i, opts);
    std::lock_guard lock(mu_);
    map_.emplace(key, r);
    return r;
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, int> map_;
};

std::optional<int> cached_regularity(RegularityCache* cache, const MonomialIdeal& i, const OracleOptions& opts) {
  return cache ? cache->get(i, opts) : regularity_or_none(i, opts);
}

std::string infeasible_reason(const OracleInfeasible& e) {
  return "oracle infeasible: support " + std::to_string(e.support()) + " exceeds cap " + std::to_string(e.cap());
}

struct Ambient {
  RegistryPtr reg;
  MonomialIdeal full, del_y, del_nbhd, del_pair;
  Monomial u;   // x_t y_t^w
  Monomial zx;  // z x_t
  std::size_t xv = 0, zv = 0;
};

Ambient ambient_pieces(const WeightedOrientedGraph& d, const PendantEdge& p) {
  Ambient a{vertex_registry(d), MonomialIdeal(nullptr), MonomialIdeal(nullptr), MonomialIdeal(nullptr),
            MonomialIdeal(nullptr), {}, {}};
  const std::size_t y = p.y;
  const std::size_t x = p.x;
  const std::size_t nbhd[] = {x, y, *p.z};
  const std::size_t pair[] = {x, y};
  a.full = edge_ideal(d, a.reg);
  a.del_y = edge_ideal(induced_subgraph_by_index(d, std::span<const std::size_t>(&y, 1)), a.reg);
  a.del_nbhd = edge_ideal(induced_subgraph_by_index(d, nbhd), a.reg);
  a.del_pair = edge_ideal(induced_subgraph_by_index(d, pair), a.reg);
  a.xv = *a.reg->index_of(d.id(x));
  a.zv = *a.reg->index_of(d.id(*p.z));
  a.u = var_power(*a.reg, d.id(x), 1) * var_power(*a.reg, d.id(y), static_cast<Exponent>(d.weight(y)));
  a.zx = var_power(*a.reg, d.id(x), 1) * var_power(*a.reg, d.id(*p.z), 1);
  return a;
}

PendantEdge require_pendant(const WeightedOrientedGraph& d, std::size_t t) {
  const auto m = accepted_matching(d);
  if (t >= m.size()) throw PreconditionError("pair index out of range");
  auto p = pendant_at(d, m, t);
  if (!p) throw PreconditionError("pair " + std::to_string(t + 1) + " is not a pendant matched edge");
  return *p;
}

Monomial polarize_into(const Monomial& m, const VariableRegistry& pol) {
  Monomial out(pol.size());
  for (std::size_t i = 0; i < pol.size(); ++i) {
    const auto o = pol.origin(i);
    out[i] = (o && m[o->base] >= o->copy) ? 1 : 0;
  }
  return out;
}

}  // namespace

// --- generators ---------------------------------------------------------------

WeightedOrientedGraph random_cm_forest(const ForestGenSpec& spec) {
  if (spec.r == 0) throw PreconditionError("random forest needs r >= 1");
  if (spec.max_weight == 0) throw PreconditionError("max_weight must be at least 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint32_t> w(spec.r);
  for (auto& x : w) x = 1 + static_cast<std::uint32_t>(draw_below(rng, spec.max_weight));
  std::vector<std::size_t> label(spec.r);
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t i = spec.r; i > 1; --i) std::swap(label[i - 1], label[draw_below(rng, i)]);
  std::vector<std::pair<std::size_t, std::size_t>> internal;
  for (std::size_t i = 1; i < spec.r; ++i) {
    if (draw_unit(rng) >= spec.density) continue;
    std::size_t a = label[i], b = label[draw_below(rng, i)];
    if (rng() & 1u) std::swap(a, b);
    internal.emplace_back(a, b);
  }
  return assemble(spec.r, w, internal);
}

void for_each_cm_forest(std::size_t r, std::uint32_t max_weight,
                        const std::function<void(const WeightedOrientedGraph&)>& f) {
  if (r == 0 || r > 6) throw PreconditionError("exhaustive enumeration supports 1 <= r <= 6");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) slots.emplace_back(i, j);

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forests;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool acyclic = true;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t s = 0; s < slots.size() && acyclic; ++s) {
      if (!(mask >> s & 1u)) continue;
      const auto a = find(slots[s].first), b = find(slots[s].second);
      if (a == b) acyclic = false;
      parent[a] = b;
      es.push_back(slots[s]);
    }
    if (acyclic) forests.push_back(std::move(es));
  }

  std::vector<std::uint32_t> w(r, 1);
  for (const auto& forest : forests) {
    for (std::uint32_t orient = 0; orient < (1u << forest.size()); ++orient) {
      std::vector<std::pair<std::size_t, std::size_t>> internal;
      for (std::size_t e = 0; e < forest.size(); ++e) {
        auto [a, b] = forest[e];
        if (orient >> e & 1u) std::swap(a, b);
        internal.emplace_back(a, b);
      }
      std::fill(w.begin(), w.end(), 1u);
      for (;;) {
        f(assemble(r, w, internal));
        std::size_t pos = 0;
        while (pos < r && w[pos] == max_weight) w[pos++] = 1;
        if (pos == r) break;
        ++w[pos];
      }
    }
  }
}

std::vector<WeightedOrientedGraph> exhaustive_cm_forests(std::size_t r, std::uint32_t max_weight) {
  std::vector<WeightedOrientedGraph> out;
  for_each_cm_forest(r, max_weight, [&](const WeightedOrientedGraph& d) { out.push_back(d); });
  return out;
}

// --- identities -----------------------------------------------------------------

bool LemmaOutcome::all_hold() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.holds; });
}

LemmaOutcome check_lemma_identities(const WeightedOrientedGraph& d, std::size_t t, unsigned k) {
  if (k == 0) throw PreconditionError("identities need k >= 1");
  const auto p = require_pendant(d, t);
  const auto a = ambient_pieces(d, p);
  const auto x = Monomial::variable(a.reg->size(), a.xv);
  const auto z = Monomial::variable(a.reg->size(), a.zv);
  const auto zu = a.u * z;

  const auto y_k = power(a.del_y, k);
  const auto y_km1 = power(a.del_y, k - 1);
  const auto n_k = power(a.del_nbhd, k);

  LemmaOutcome out;
  {
    const auto lhs = intersection(y_k, multiply(power(a.full, k - 1), a.u));
    const auto rhs = sum(multiply(y_km1, zu), multiply(n_k, a.u));
    out.identities.push_back({"intersection-split", lhs == rhs});
  }
  {
    const auto lhs = intersection(multiply(y_km1, zu), multiply(n_k, a.u));
    out.identities.push_back({"intersection-shift", lhs == multiply(n_k, zu)});
  }
  out.identities.push_back({"colon-zx", colon(y_k, a.zx) == y_km1});
  out.identities.push_back({"plus-x", add_generator(y_k, x) == add_generator(power(a.del_pair, k), x)});
  {
    const auto first = add_generator(colon(y_k, x), z);
    const auto second = add_generator(colon(n_k, x), z);
    const auto third = add_generator(n_k, z);
    out.identities.push_back({"colon-x-plus-z", first == second && second == third});
  }
  return out;
}

// --- regularity bounds --------------------------------------------------------------

std::optional<int> regularity_or_none(const MonomialIdeal& i, const OracleOptions& opts) {
  if (i.is_zero()) return std::nullopt;
  return regularity(i, opts);
}

bool ses_inequalities_hold(std::optional<int> a, std::optional<int> b, std::optional<int> c) {
  // Zero modules have regularity minus infinity.
  constexpr long kNone = -(1L << 40);
  const long ra = a ? *a : kNone, rb = b ? *b : kNone, rc = c ? *c : kNone;
  bool ok = true;
  ok = ok && rb <= std::max(ra, rc);
  ok = ok && ra <= std::max(rb, rc + 1);
  ok = ok && rc <= std::max(ra - 1, rb);
  if (ra > rc + 1) ok = ok && rb == ra;
  if (rc >= ra) ok = ok && rb == rc;
  if (ra > rb) ok = ok && rc == ra - 1;
  if (rb > ra) ok = ok && rc == rb;
  return ok;
}

CorollarySides corollary_sides(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts) {
  if (k == 0) throw PreconditionError("the bound needs k >= 1");
  const auto i = edge_ideal(d);
  CorollarySides s;
  s.reg_power = regularity(power(i, k), opts);
  s.bound = static_cast<std::int64_t>(k - 1) * (d.max_weight() + 1) + regularity(i, opts);
  return s;
}

BoundsOutcome check_regularity_bounds(const WeightedOrientedGraph& d, std::size_t t, unsigned k,
                                      const OracleOptions& opts) {
  if (k == 0) throw PreconditionError("the bounds need k >= 1");
  const auto p = require_pendant(d, t);
  BoundsOutcome out;
  try {
    const std::size_t nbhd[] = {p.x, p.y, *p.z};
    const std::size_t pair[] = {p.x, p.y};
    const auto del_y = edge_ideal(induced_subgraph_by_index(d, std::span<const std::size_t>(&p.y, 1)));
    const auto del_n = edge_ideal(induced_subgraph_by_index(d, nbhd));
    const auto del_p = edge_ideal(induced_subgraph_by_index(d, pair));

    const auto lhs = regularity_or_none(power(del_y, k), opts);
    long rhs = -(1L << 40);
    if (auto v = regularity_or_none(power(del_y, k - 1), opts)) rhs = std::max<long>(rhs, *v + 2);
    if (auto v = regularity_or_none(power(del_n, k), opts)) rhs = std::max<long>(rhs, *v + 1);
    if (auto v = regularity_or_none(power(del_p, k), opts)) rhs = std::max<long>(rhs, *v);
    out.deletion_bound = !lhs || *lhs <= rhs;

    const auto c = corollary_sides(d, k, opts);
    out.corollary_bound = c.holds();
    out.corollary_equality = c.reg_power == c.bound;

    const auto a = ambient_pieces(d, p);
    const auto j = multiply(power(a.full, k - 1), a.u);
    const auto kk = power(a.del_y, k);
    const auto rj = regularity_or_none(j, opts);
    const auto rk = regularity_or_none(kk, opts);
    std::optional<int> rb = rj;
    if (rk && (!rb || *rk > *rb)) rb = rk;
    out.ses_holds = ses_inequalities_hold(regularity_or_none(intersection(j, kk), opts), rb, c.reg_power);
  } catch (const OracleInfeasible& e) {
    out.skipped = true;
    out.reason = infeasible_reason(e);
  }
  return out;
}

// --- Betti splitting ------------------------------------------------------------------

SplittingOutcome betti_splitting_check(const MonomialIdeal& i1, const MonomialIdeal& i2, const OracleOptions& opts) {
  const auto total = sum(i1, i2);
  if (total.size() != i1.size() + i2.size())
    throw PreconditionError("generators of I1 + I2 are not the disjoint union of those of I1 and I2");
  SplittingOutcome out;
  try {
    auto table = [&](const MonomialIdeal& i) { return i.is_zero() ? BettiTable{} : betti_table(i, opts); };
    const auto t = table(total), t1 = table(i1), t2 = table(i2), tc = table(intersection(i1, i2));
    std::vector<BettiTable::Key> keys;
    for (const auto* tab : {&t, &t1, &t2}) {
      for (const auto& [key, v] : tab->entries()) keys.push_back(key);
    }
    for (const auto& [key, v] : tc.entries()) keys.emplace_back(key.first + 1, key.second);
    out.holds = std::all_of(keys.begin(), keys.end(), [&](const BettiTable::Key& key) {
      const auto [i, j] = key;
      return t.at(i, j) == t1.at(i, j) + t2.at(i, j) + tc.at(i - 1, j);
    });
    auto reg = [](const BettiTable& b) { return b.empty() ? std::nullopt : std::optional<int>(b.regularity()); };
    std::optional<int> rb = reg(t1);
    if (auto r2 = reg(t2); r2 && (!rb || *r2 > *rb)) rb = r2;
    out.ses_holds = ses_inequalities_hold(reg(tc), rb, reg(t));
  } catch (const OracleInfeasible& e) {
    out.skipped = true;
    out.reason = infeasible_reason(e);
  }
  return out;
}

std::pair<MonomialIdeal, MonomialIdeal> polarized_power_split(const WeightedOrientedGraph& d, std::size_t t,
                                                              unsigned k) {
  const auto m = accepted_matching(d);
  if (t >= m.size()) throw PreconditionError("pair index out of range");
  if (k == 0) throw PreconditionError("the split needs k >= 1");
  const auto reg = vertex_registry(d);
  const auto pk = power(edge_ideal(d, reg), k);
  const auto& pair = m.pairs[t];
  Monomial u = var_power(*reg, d.id(pair.x), 1) * var_power(*reg, d.id(pair.y), static_cast<Exponent>(d.weight(pair.y)));
  Monomial uk = Monomial::one(reg->size());
  for (unsigned i = 0; i < k; ++i) uk = uk * u;

  const auto pol = polarize(pk);
  std::vector<Monomial> g1, g2;
  for (const auto& g : pk.generators()) (g == uk ? g2 : g1).push_back(polarize_into(g, *pol.registry));
  return {minimalize(pol.registry, std::move(g1)), minimalize(pol.registry, std::move(g2))};
}

// --- equivalence reports -------------------------------------------------------------------

std::size_t EquivalenceReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const EquivalenceRow& r) { return !r.skipped && !r.match; }));
}

std::size_t EquivalenceReport::skipped() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const EquivalenceRow& r) { return r.skipped; }));
}

void EquivalenceReport::append(const EquivalenceReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  lemma_checks += other.lemma_checks;
  lemma_failures += other.lemma_failures;
  bound_checks += other.bound_checks;
  bound_failures += other.bound_failures;
  monotonicity_checks += other.monotonicity_checks;
  monotonicity_failures += other.monotonicity_failures;
  if (!counterexample && other.counterexample) {
    counterexample = other.counterexample;
    counterexample_k = other.counterexample_k;
  }
}

namespace {

EquivalenceReport compare_rows(const WeightedOrientedGraph& d, unsigned k_max, const std::string& instance,
                               const OracleOptions& opts, const ThetaFn& theta_fn, RegularityCache* cache) {
  accepted_matching(d);
  EquivalenceReport rep;
  const auto base = edge_ideal(d);
  for (unsigned k = 1; k <= k_max; ++k) {
    EquivalenceRow row;
    row.instance = instance;
    row.k = k;
    row.theta = theta_fn ? theta_fn(k, d) : theta(k, d);
    const auto start = std::chrono::steady_clock::now();
    try {
      row.oracle = *cached_regularity(cache, power(base, k), opts);
      row.match = *row.oracle == row.theta;
    } catch (const OracleInfeasible& e) {
      row.skipped = true;
      row.reason = infeasible_reason(e);
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!row.skipped && !row.match && !rep.counterexample) {
      rep.counterexample = to_text(d);
      rep.counterexample_k = k;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::size_t monotonicity_impl(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts,
                              RegularityCache* cache, std::size_t* checks) {
  const auto m = accepted_matching(d);
  if (m.size() < 2) return 0;
  const auto th = theta(k, d);
  std::optional<int> reg;
  try {
    reg = cached_regularity(cache, power(edge_ideal(d), k), opts);
  } catch (const OracleInfeasible&) {
  }
  std::size_t bad = 0;
  for (const auto& pr : m.pairs) {
    const std::size_t gone[] = {pr.x, pr.y};
    const auto sub = induced_subgraph_by_index(d, gone);
    ++*checks;
    if (theta(k, sub) > th) ++bad;
    if (!reg) continue;
    try {
      const auto sub_reg = cached_regularity(cache, power(edge_ideal(sub), k), opts);
      ++*checks;
      if (sub_reg && *sub_reg > *reg) ++bad;
    } catch (const OracleInfeasible&) {
    }
  }
  return bad;
}

EquivalenceReport check_instance(const WeightedOrientedGraph& d, const std::string& id, const SuiteOptions& opts,
                                 RegularityCache& cache) {
  auto rep = compare_rows(d, opts.k_max, id, opts.oracle, opts.theta_fn, &cache);
  const auto m = accepted_matching(d);
  auto note_failure = [&](unsigned k) {
    if (!rep.counterexample) {
      rep.counterexample = to_text(d);
      rep.counterexample_k = k;
    }
  };
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (!pendant_at(d, m, t)) continue;
    for (unsigned k = 1; k <= opts.k_max; ++k) {
      if (opts.lemmas) {
        ++rep.lemma_checks;
        if (!check_lemma_identities(d, t, k).all_hold()) {
          ++rep.lemma_failures;
          note_failure(k);
        }
      }
      if (opts.bounds) {
        const auto b = check_regularity_bounds(d, t, k, opts.oracle);
        if (!b.skipped) ++rep.bound_checks;
        if (!b.ok()) {
          ++rep.bound_failures;
          note_failure(k);
        }
      }
    }
  }
  if (opts.monotonicity) {
    for (unsigned k = 1; k <= opts.k_max; ++k) {
      const auto bad = monotonicity_impl(d, k, opts.oracle, &cache, &rep.monotonicity_checks);
      if (bad) {
        rep.monotonicity_failures += bad;
        note_failure(k);
      }
    }
  }
  return rep;
}

EquivalenceReport run_instances(const std::vector<std::pair<std::string, WeightedOrientedGraph>>& instances,
                                const SuiteOptions& opts) {
  RegularityCache cache;
  std::vector<EquivalenceReport> parts(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    parts[i] = check_instance(instances[i].second, instances[i].first, opts, cache);
  });
  EquivalenceReport total;
  for (const auto& p : parts) total.append(p);
  return total;
}

std::string padded(std::size_t v, std::size_t width) {
  auto s = std::to_string(v);
  return std::string(s.size() < width ? width - s.size() : 0, '0') + s;
}

}  // namespace

EquivalenceReport formula_vs_oracle(const WeightedOrientedGraph& d, unsigned k_max, const std::string& instance,
                                    const OracleOptions& opts, const ThetaFn& theta_fn) {
  return compare_rows(d, k_max, instance, opts, theta_fn, nullptr);
}

std::size_t monotonicity_violations(const WeightedOrientedGraph& d, unsigned k, const OracleOptions& opts) {
  std::size_t checks = 0;
  return monotonicity_impl(d, k, opts, nullptr, &checks);
}

EquivalenceReport run_exhaustive_suite(const SuiteOptions& opts) {
  std::vector<std::pair<std::string, WeightedOrientedGraph>> instances;
  for (std::size_t r = 1; r <= opts.r_max; ++r) {
    std::size_t n = 0;
    for_each_cm_forest(r, opts.max_weight, [&](const WeightedOrientedGraph& d) {
      instances.emplace_back("exh-r" + std::to_string(r) + "-" + padded(n++, 5), d);
    });
  }
  return run_instances(instances, opts);
}

EquivalenceReport run_random_suite(const SuiteOptions& opts) {
  if (opts.r_max == 0) throw PreconditionError("r_max must be at least 1");
  std::mt19937_64 master(opts.seed);
  std::vector<std::pair<std::string, WeightedOrientedGraph>> instances;
  for (std::size_t i = 0; i < opts.count; ++i) {
    ForestGenSpec spec;
    spec.r = 1 + draw_below(master, opts.r_max);
    spec.max_weight = opts.max_weight;
    spec.seed = master();
    spec.density = 0.25 + 0.75 * draw_unit(master);
    instances.emplace_back("rnd-s" + std::to_string(opts.seed) + "-" + padded(i, 4), random_cm_forest(spec));
  }
  return run_instances(instances, opts);
}

}  // namespace wofreg
