#pragma once

// Reference computations used only by the tests. They share no code with the
// library beyond the data types: Betti numbers come from the multigraded
// strands of the Taylor complex with rational elimination, and theta is a
// direct maximum over all subsets of matched pairs read off the graph.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wofreg/digraph.hpp"
#include "wofreg/monomial.hpp"
#include "wofreg/resolution.hpp"

namespace oracle {

inline std::size_t rank_q(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

/// beta_{i,j}(I) from the Taylor complex: in multidegree a the chains are the
/// generator subsets with lcm exactly a, and a face map survives only when
/// dropping the generator keeps the lcm. Needs at most ~16 generators.
inline std::map<std::pair<int, int>, std::uint64_t> taylor_betti(const wofreg::MonomialIdeal& ideal) {
  const auto& g = ideal.generators();
  const std::size_t m = g.size();
  const std::size_t n = ideal.num_vars();
  std::map<std::vector<std::uint16_t>, std::vector<std::uint32_t>> strands;
  for (std::uint32_t s = 1; s < (1u << m); ++s) {
    std::vector<std::uint16_t> l(n, 0);
    for (std::size_t i = 0; i < m; ++i)
      if (s >> i & 1u)
        for (std::size_t v = 0; v < n; ++v) l[v] = std::max<std::uint16_t>(l[v], g[i][v]);
    strands[l].push_back(s);
  }
  std::map<std::pair<int, int>, std::uint64_t> out;
  for (auto& [a, sets] : strands) {
    int deg = 0;
    for (auto e : a) deg += e;
    std::map<int, std::vector<std::uint32_t>> by_size;
    for (auto s : sets) by_size[__builtin_popcount(s)].push_back(s);
    auto boundary_rank = [&](int size) -> std::size_t {
      if (!by_size.count(size) || !by_size.count(size - 1)) return 0;
      const auto& cols = by_size[size];
      const auto& rows = by_size[size - 1];
      std::vector<std::vector<mpq_class>> mat(rows.size(), std::vector<mpq_class>(cols.size(), 0));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        int pos = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!(cols[c] >> i & 1u)) continue;
          const auto face = cols[c] & ~(1u << i);
          auto it = std::find(rows.begin(), rows.end(), face);
          if (it != rows.end()) mat[static_cast<std::size_t>(it - rows.begin())][c] = (pos % 2) ? -1 : 1;
          ++pos;
        }
      }
      return rank_q(std::move(mat));
    };
    for (const auto& [size, chains] : by_size) {
      const std::size_t h = chains.size() - boundary_rank(size) - boundary_rank(size + 1);
      if (h) out[{size - 1, deg}] += h;
    }
  }
  return out;
}

/// Maximum of the formula over every nonempty subset of matched pairs whose
/// x's are pairwise non-adjacent, with the pairs taken from the leaf
/// matching the caller supplies as (x id, y id).
inline std::int64_t brute_theta(unsigned k, const wofreg::WeightedOrientedGraph& d,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (k == 0) return 0;
  const std::size_t r = pairs.size();
  std::int64_t best = 0;
  for (std::uint32_t s = 1; s < (1u << r); ++s) {
    bool ok = true;
    std::int64_t sum = 0, mx = 0;
    for (std::size_t i = 0; i < r && ok; ++i) {
      if (!(s >> i & 1u)) continue;
      const auto yi = *d.index_of(pairs[i].second);
      sum += d.weight(yi);
      mx = std::max<std::int64_t>(mx, d.weight(yi));
      for (std::size_t j = i + 1; j < r && ok; ++j) {
        if (!(s >> j & 1u)) continue;
        for (const auto& a : {pairs[i].first, pairs[i].second})
          for (const auto& b : {pairs[j].first, pairs[j].second})
            if (d.adjacent(*d.index_of(a), *d.index_of(b))) ok = false;
      }
    }
    if (ok) best = std::max(best, (mx + 1) * static_cast<std::int64_t>(k - 1) + sum + 1);
  }
  return best;
}

/// Random monomial ideal over vars x1..xn: up to max_gens generators with
/// exponents in [0, max_exp], never the unit ideal.
inline wofreg::MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, unsigned max_exp,
                                          std::size_t max_gens, const std::string& prefix = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  auto reg = wofreg::VariableRegistry::make(names);
  const std::size_t count = 1 + rng() % max_gens;
  std::vector<wofreg::Monomial> gens;
  for (std::size_t i = 0; i < count; ++i) {
    wofreg::Monomial mono(n);
    for (std::size_t v = 0; v < n; ++v) mono[v] = static_cast<std::uint16_t>(rng() % (max_exp + 1));
    if (mono.is_one()) mono[rng() % n] = 1;
    gens.push_back(mono);
  }
  return wofreg::minimalize(reg, std::move(gens));
}

inline std::map<std::pair<int, int>, std::uint64_t> entries(const wofreg::BettiTable& t) {
  return {t.entries().begin(), t.entries().end()};
}

}  // namespace oracle
