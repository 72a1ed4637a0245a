#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wofreg/error.hpp"
#include "wofreg/graph_io.hpp"
#include "wofreg/theta.hpp"
#include "wofreg/verify.hpp"

namespace {

using namespace wofreg;

WeightedOrientedGraph data(const std::string& name) { return read_digraph_file(std::string(WOFREG_DATA_DIR) + "/" + name); }

std::vector<std::pair<std::string, std::string>> pair_ids(const WeightedOrientedGraph& d) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto m = find_leaf_perfect_matching(d);
  for (const auto& p : m->pairs) out.emplace_back(d.id(p.x), d.id(p.y));
  return out;
}

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(ConflictGraph, BundledForests) {
  const auto d38 = data("six_pairs.graph");
  EXPECT_EQ(conflict_graph(d38, *find_leaf_perfect_matching(d38)).edges, (Edges{{0, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}}));
  const auto d46 = data("five_pairs.graph");
  EXPECT_EQ(conflict_graph(d46, *find_leaf_perfect_matching(d46)).edges, (Edges{{0, 1}, {1, 2}, {1, 3}, {3, 4}}));
  const auto two = parse_digraph("x1:1; y1:1; x2:1; y2:1; x1->y1; x2->y2");
  EXPECT_TRUE(conflict_graph(two, *find_leaf_perfect_matching(two)).edges.empty());
}

TEST(Families, SmallCases) {
  const auto one = ThetaInstance::from_accepted(parse_digraph("x:1; y:4; x->y"));
  const auto f1 = enumerate_families(one);
  ASSERT_EQ(f1.size(), 1u);
  EXPECT_EQ(f1[0].indices, (std::vector<std::size_t>{0}));

  const auto adj = ThetaInstance::from_accepted(parse_digraph("x1:1; y1:1; x2:1; y2:1; x1->y1; x2->y2; x1->x2"));
  const auto f2 = enumerate_families(adj);
  ASSERT_EQ(f2.size(), 2u);
  EXPECT_EQ(f2[0].indices, (std::vector<std::size_t>{0}));
  EXPECT_EQ(f2[1].indices, (std::vector<std::size_t>{1}));
}

TEST(Families, FivePairForestContainsTheMaximisers) {
  const auto fams = enumerate_families(ThetaInstance::from_accepted(data("five_pairs.graph")));
  auto has = [&](std::vector<std::size_t> idx) {
    return std::any_of(fams.begin(), fams.end(), [&](const NonAdjacentFamily& f) { return f.indices == idx; });
  };
  EXPECT_TRUE(has({0, 2, 3}));
  EXPECT_TRUE(has({0, 2, 4}));
  EXPECT_TRUE(has({1, 4}));
  EXPECT_FALSE(has({0, 1}));
}

TEST(Families, CapIsEnforced) {
  std::vector<std::uint32_t> w(30, 1);
  const auto inst = ThetaInstance::from_parts(w, {});
  EXPECT_THROW(enumerate_families(inst), EnumerationCapExceeded);
  EXPECT_EQ(theta(1, inst), 31);  // falls through to the tree DP
}

TEST(Theta, KnownValues) {
  EXPECT_EQ(theta(1, data("six_pairs.graph")), 25);
  const auto d46 = data("five_pairs.graph");
  EXPECT_EQ(theta(1, d46), 10);
  EXPECT_EQ(theta(2, d46), 14);
  EXPECT_EQ(theta(5, d46), 27);
  EXPECT_EQ(theta(3, data("edge_w4.graph")), 15);
  for (unsigned k = 0; k <= 6; ++k) EXPECT_EQ(theta(k, data("edge_w4.graph")), 5 * static_cast<std::int64_t>(k));
  EXPECT_EQ(theta(0, d46), 0);
}

TEST(Theta, RejectedGraphThrows) {
  EXPECT_THROW(theta(1, data("sink_violation.graph")), HypothesisRejected);
}

TEST(Theta, EmptyInstanceIsZero) {
  EXPECT_EQ(theta(3, ThetaInstance::from_parts({}, {})), 0);
}

TEST(Theta, SymmetricForm) {
  const auto i46 = ThetaInstance::from_accepted(data("five_pairs.graph"));
  for (unsigned k = 1; k <= 10; ++k) EXPECT_EQ(theta_symmetric(k, i46), theta(k, i46)) << k;
  EXPECT_EQ(theta_symmetric(2, ThetaInstance::from_accepted(data("edge_w4.graph"))), 10);
  EXPECT_EQ(theta_symmetric(1, ThetaInstance::from_accepted(data("six_pairs.graph"))), 25);
}

TEST(Theta, TreeDp) {
  EXPECT_EQ(theta_tree_dp(1, ThetaInstance::from_accepted(data("six_pairs.graph"))), 25);
  for (unsigned k = 1; k <= 5; ++k) EXPECT_EQ(theta_tree_dp(k, ThetaInstance::from_accepted(data("edge_w4.graph"))), 5 * k);
}

TEST(Theta, TreeDpNeedsForest) {
  const auto tri = ThetaInstance::from_parts({1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_THROW(theta_tree_dp(1, tri), PreconditionError);
}

TEST(Theta, EnginesAgreeWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    ForestGenSpec spec;
    spec.r = 1 + seed % 9;
    spec.max_weight = 1 + seed % 7;
    spec.seed = seed;
    spec.density = 0.2 + 0.1 * static_cast<double>(seed % 8);
    const auto d = random_cm_forest(spec);
    const auto inst = ThetaInstance::from_accepted(d);
    const auto ids = pair_ids(d);
    for (unsigned k = 0; k <= 6; ++k) {
      const auto want = oracle::brute_theta(k, d, ids);
      ASSERT_EQ(theta(k, inst), want) << to_text(d) << "k=" << k;
      if (k >= 1) {
        ASSERT_EQ(theta_symmetric(k, inst), want);
        ASSERT_EQ(theta_tree_dp(k, inst), want);
      }
    }
  }
}

TEST(Theta, NonAdjacencyMatchesInternalVertexTest) {
  // Every y is a leaf, so two matched edges touch exactly when their x's do.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto d = random_cm_forest({1 + seed % 8, 3, seed, 0.6});
    const auto m = *find_leaf_perfect_matching(d);
    const auto inst = ThetaInstance::from_matching(d, m);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        bool touch = false;
        for (auto a : {m.pairs[i].x, m.pairs[i].y})
          for (auto b : {m.pairs[j].x, m.pairs[j].y}) touch = touch || d.adjacent(a, b);
        ASSERT_EQ(touch, d.adjacent(m.pairs[i].x, m.pairs[j].x));
        ASSERT_EQ(touch, inst.conflict(i, j));
      }
  }
}

TEST(Theta, IncrementsAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto d = random_cm_forest({2 + seed % 7, 5, seed, 0.5});
    const auto m = *find_leaf_perfect_matching(d);
    const auto inst = ThetaInstance::from_matching(d, m);
    for (unsigned k = 1; k <= 6; ++k) {
      const auto step = theta(k, inst) - theta(k - 1, inst);
      EXPECT_GE(step, 2);
      for (std::size_t t = 0; t < m.size(); ++t) {
        if (pendant_at(d, m, t)) EXPECT_GE(step, static_cast<std::int64_t>(inst.weight(t)) + 1);
        const std::size_t gone[] = {t};
        EXPECT_LE(theta(k, inst.without_pairs(gone)), theta(k, inst));
      }
    }
  }
}

TEST(Theta, DisjointUnionSplitsOverComponents) {
  // theta(k, D1 + D2) = max over the choice of families in each part, which
  // for this formula is max(t1, t2, combined) where combined is computed here
  // from the per-max-weight best sums of the two parts.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d1 = random_cm_forest({1 + seed % 4, 4, seed, 0.5});
    const auto d2 = random_cm_forest({1 + (seed / 4) % 4, 4, seed + 1000, 0.5});
    std::string text = to_text(d1);
    std::string t2 = to_text(d2);
    for (char& c : t2) {
      if (c == 'x') c = 'u';
      if (c == 'y') c = 'v';
    }
    const auto u = parse_digraph(text + t2);
    const auto i1 = ThetaInstance::from_accepted(d1), i2 = ThetaInstance::from_accepted(d2);
    for (unsigned k = 1; k <= 4; ++k) {
      std::int64_t best = std::max(theta(k, i1), theta(k, i2));
      for (const auto& [w1, s1] : best_sum_by_max_weight(i1))
        for (const auto& [w2, s2] : best_sum_by_max_weight(i2))
          best = std::max<std::int64_t>(best, (std::max(w1, w2) + 1) * static_cast<std::int64_t>(k - 1) + s1 + s2 + 1);
      EXPECT_EQ(theta(k, u), best);
    }
  }
}

TEST(Corollary, Bound) {
  const auto d46 = data("five_pairs.graph");
  EXPECT_EQ(corollary_bound(3, d46), 20);
  EXPECT_GE(corollary_bound(3, d46), theta(3, d46));
  EXPECT_EQ(corollary_bound(1, d46), theta(1, d46));
  const auto e = data("edge_w4.graph");
  for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(corollary_bound(k, e), theta(k, e));
}

TEST(Recursion, HoldsOnBundledForests) {
  const auto d46 = data("five_pairs.graph");
  const auto m46 = *find_leaf_perfect_matching(d46);
  const auto p = pick_pendant_matched_edge(d46, m46);
  for (unsigned k = 1; k <= 5; ++k) EXPECT_TRUE(theta_recursion_check(d46, m46, p.pair, k).ok()) << k;

  const auto d38 = data("six_pairs.graph");
  const auto m38 = *find_leaf_perfect_matching(d38);
  const std::size_t t6 = 5;
  ASSERT_TRUE(pendant_at(d38, m38, t6));
  EXPECT_EQ(d38.id(*pendant_at(d38, m38, t6)->z), "x3");
  EXPECT_TRUE(theta_recursion_check(d38, m38, t6, 2).ok());
}

TEST(Recursion, HoldsOnRandomForests) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto d = random_cm_forest({2 + seed % 8, 6, seed, 0.7});
    const auto m = *find_leaf_perfect_matching(d);
    for (std::size_t t = 0; t < m.size(); ++t) {
      if (!pendant_at(d, m, t)) continue;
      for (unsigned k = 1; k <= 4; ++k) ASSERT_TRUE(theta_recursion_check(d, m, t, k).ok()) << to_text(d);
    }
  }
}

TEST(Recursion, NonPendantThrows) {
  const auto d = data("edge_w4.graph");
  EXPECT_THROW(theta_recursion_check(d, *find_leaf_perfect_matching(d), 0, 1), PreconditionError);
}

TEST(Piecewise, FivePairForest) {
  const auto pw = theta_piecewise(data("five_pairs.graph"));
  using L = PiecewiseLinearFunction::Line;
  EXPECT_EQ(pw.lines(), (std::vector<L>{{4, 10}, {5, 7}}));
  EXPECT_EQ(pw.breakpoints(), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(pw.value(4), 22);
  EXPECT_EQ(pw.value(5), 27);
  EXPECT_EQ(pw.describe(), "4(k-1)+10 for 1 <= k <= 4; 5(k-1)+7 for k >= 4");
}

TEST(Piecewise, SingleEdgeAndLargeForest) {
  const auto e = theta_piecewise(data("edge_w4.graph"));
  using L = PiecewiseLinearFunction::Line;
  EXPECT_EQ(e.lines(), (std::vector<L>{{5, 5}}));
  EXPECT_TRUE(e.breakpoints().empty());
  EXPECT_EQ(theta_piecewise(data("six_pairs.graph")).value(1), 25);
}

TEST(Piecewise, MatchesThetaEverywhere) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto d = random_cm_forest({1 + seed % 10, 1 + static_cast<std::uint32_t>(seed % 9), seed, 0.5});
    const auto inst = ThetaInstance::from_accepted(d);
    const auto pw = theta_piecewise(inst);
    for (std::int64_t k = 1; k <= 40; ++k) ASSERT_EQ(pw.value(k), theta(static_cast<unsigned>(k), inst));
    // every kept line is maximal somewhere
    for (const auto& l : pw.lines()) {
      bool somewhere = false;
      for (std::int64_t k = 1; k <= 200 && !somewhere; ++k) somewhere = l.at(k) == pw.value(k);
      EXPECT_TRUE(somewhere);
    }
    EXPECT_LE(pw.lines().back().slope, static_cast<std::int64_t>(d.max_weight()) + 1);
  }
}

TEST(Piecewise, TiesAndDominance) {
  using L = PiecewiseLinearFunction::Line;
  const auto pw = PiecewiseLinearFunction::upper_envelope({{4, 10}, {4, 9}, {5, 7}, {2, 3}});
  EXPECT_EQ(pw.lines(), (std::vector<L>{{4, 10}, {5, 7}}));
  const auto tie = PiecewiseLinearFunction::upper_envelope({{3, 5}, {3, 5}});
  EXPECT_EQ(tie.lines(), (std::vector<L>{{3, 5}}));
  const auto cross = PiecewiseLinearFunction::upper_envelope({{2, 10}, {5, 1}});
  // 2(k-1)+10 vs 5(k-1)+1: equal at k = 4
  EXPECT_EQ(cross.breakpoints(), (std::vector<std::int64_t>{4}));
  const auto frac = PiecewiseLinearFunction::upper_envelope({{2, 10}, {4, 1}});
  // 2(k-1)+10 vs 4(k-1)+1: first integer k where the second wins is 6
  EXPECT_EQ(frac.breakpoints(), (std::vector<std::int64_t>{6}));
}

TEST(Piecewise, JsonRoundTrip) {
  const auto pw = theta_piecewise(data("five_pairs.graph"));
  EXPECT_EQ(pw.to_json(), R"({"breakpoints":[4],"lines":[[4,10],[5,7]]})");
  const auto back = PiecewiseLinearFunction::from_json(pw.to_json());
  EXPECT_EQ(back.lines(), pw.lines());
  EXPECT_EQ(back.breakpoints(), pw.breakpoints());
  EXPECT_THROW(PiecewiseLinearFunction::from_json(R"({"lines":[[4,10],[5,7]],"breakpoints":[3]})"), ParseError);
}

}  // namespace
