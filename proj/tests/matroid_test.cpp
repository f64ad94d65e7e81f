// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcg_lab/matroid.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_util.hpp"
#include "vcg_lab/errors.hpp"

namespace vcg_lab {
namespace {

using testing::all_bases;
using testing::subset_of;

TEST(MatroidTest, UniformRankIsCapped) {
  const Matroid m = Matroid::uniform(4, 2);
  EXPECT_EQ(m.rank(ItemSet{0, 1, 2}), 2);
  EXPECT_EQ(m.rank(ItemSet{3}), 1);
  EXPECT_EQ(m.rank(ItemSet{}), 0);
  EXPECT_EQ(m.full_rank(), 2);
  EXPECT_EQ(m.kind(), MatroidKind::kUniform);
}

TEST(MatroidTest, GraphicTriangleRanks) {
  const Matroid k3 = Matroid::graphic(complete_graph(3));
  EXPECT_EQ(k3.rank(ItemSet{0, 1, 2}), 2);
  EXPECT_EQ(k3.rank(ItemSet{1}), 1);
  EXPECT_EQ(k3.full_rank(), 2);
}

TEST(MatroidTest, RankRejectsBadSubsets) {
  const Matroid m = Matroid::uniform(3, 1);
  EXPECT_THROW(m.rank(ItemSet{3}), DomainError);
  EXPECT_THROW(m.rank(ItemSet{-1}), DomainError);
  EXPECT_THROW(m.rank(ItemSet{0, 0}), DomainError);
}

TEST(MatroidTest, UniformParameterRange) {
  EXPECT_THROW(Matroid::uniform(3, 4), DomainError);
  EXPECT_THROW(Matroid::uniform(3, -1), DomainError);
  EXPECT_NO_THROW(Matroid::uniform(3, 3));
}

TEST(MatroidTest, GraphicRejectsOutOfRangeVertices) {
  GraphicMatroidSpec g{2, {{0, 2}}};
  EXPECT_THROW(Matroid::graphic(g), DomainError);
}

TEST(MatroidTest, BridgesExamples) {
  const Matroid k3 = Matroid::graphic(complete_graph(3));
  EXPECT_EQ(bridges(k3, ItemSet{0, 1}), (ItemSet{0, 1}));
  EXPECT_TRUE(bridges(k3, ItemSet{0, 1, 2}).empty());
  EXPECT_EQ(bridges(Matroid::uniform(3, 1), ItemSet{0}), (ItemSet{0}));
}

TEST(MatroidTest, Bridgelessness) {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      EXPECT_TRUE(is_bridgeless(Matroid::uniform(n, k))) << n << "," << k;
    }
    EXPECT_FALSE(is_bridgeless(Matroid::uniform(n, n)));
  }
  EXPECT_FALSE(is_bridgeless(Matroid::graphic(path_graph(4))));
  EXPECT_EQ(ground_bridges(Matroid::graphic(path_graph(4))),
            (ItemSet{0, 1, 2}));
  EXPECT_TRUE(is_bridgeless(Matroid::graphic(complete_graph(3))));
}

TEST(MatroidTest, GreedyExamples) {
  const Matroid k3 = Matroid::graphic(complete_graph(3));
  const std::vector<double> c = {0.2, 0.5, 0.7};
  const BasisResult r = greedy_min_basis(k3, c);
  EXPECT_EQ(r.basis, (ItemSet{0, 1}));
  EXPECT_DOUBLE_EQ(r.nominal_cost, 0.7);

  const BasisResult u = greedy_min_basis(Matroid::uniform(3, 1),
                                         std::vector<double>{0.9, 0.3, 0.6});
  EXPECT_EQ(u.basis, (ItemSet{1}));
  EXPECT_DOUBLE_EQ(u.nominal_cost, 0.3);
}

TEST(MatroidTest, GreedyOnUniformTakesCheapestK) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = testing::uniform_costs(rng, 7);
    ItemSet order = {0, 1, 2, 3, 4, 5, 6};
    std::sort(order.begin(), order.end(),
              [&](Item a, Item b) { return c[a] < c[b]; });
    order.resize(3);
    ItemSet basis = greedy_min_basis(Matroid::uniform(7, 3), c).basis;
    std::sort(order.begin(), order.end());
    std::sort(basis.begin(), basis.end());
    EXPECT_EQ(basis, order);
  }
}

TEST(MatroidTest, GreedyTieBreakByIndex) {
  const auto r = greedy_min_basis(Matroid::uniform(3, 1),
                                  std::vector<double>{0.5, 0.5, 0.5});
  EXPECT_EQ(r.basis, (ItemSet{0}));
}

TEST(MatroidTest, NoFiniteBasisWhenBridgeExcluded) {
  const Matroid tree = Matroid::graphic(path_graph(3));
  const std::vector<double> c = {0.1, 0.2};
  EXPECT_THROW(greedy_min_basis(tree, c, {.excluded = {0}}),
               NoFiniteBasisError);
  EXPECT_FALSE(try_greedy_min_basis(tree, c, {.excluded = {1}}).has_value());
}

TEST(MatroidTest, LoopsAreNeverSelected) {
  GraphicMatroidSpec g{2, {{0, 0}, {0, 1}}};
  const Matroid m = Matroid::graphic(g);
  EXPECT_EQ(m.rank(ItemSet{0}), 0);
  const auto r = greedy_min_basis(m, std::vector<double>{0.0, 0.9});
  EXPECT_EQ(r.basis, (ItemSet{1}));
}

TEST(MatroidTest, CheckCostsRejectsBadVectors) {
  EXPECT_THROW(check_costs(std::vector<double>{0.1}, 2), DomainError);
  EXPECT_THROW(check_costs(std::vector<double>{-0.1}, 1), DomainError);
  EXPECT_THROW(check_costs(std::vector<double>{std::nan("")}, 1),
               DomainError);
}

// Property: greedy equals the brute-force minimum over all bases.
TEST(MatroidPropertyTest, GreedyMatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::vector<Matroid> zoo = testing::bridgeless_zoo();
  zoo.push_back(Matroid::graphic(path_graph(5)));
  GraphicMatroidSpec multi{4, {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}}};
  zoo.push_back(Matroid::graphic(multi));
  zoo.push_back(Matroid::graphic(complete_graph(5)));  // 10 items
  for (const Matroid& m : zoo) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto c = testing::uniform_costs(rng, m.ground_size());
      const BasisResult r = greedy_min_basis(m, c);
      EXPECT_EQ(static_cast<int>(r.basis.size()), m.full_rank());
      EXPECT_EQ(m.rank(r.basis), m.full_rank());
      EXPECT_NEAR(r.nominal_cost, testing::brute_min_basis_cost(m, c), 1e-12);
    }
  }
}

// Property: matroid axioms over all pairs of subsets.
TEST(MatroidPropertyTest, AxiomsHold) {
  std::vector<Matroid> zoo = testing::bridgeless_zoo();
  zoo.push_back(Matroid::graphic(path_graph(5)));
  for (const Matroid& m : zoo) {
    if (m.ground_size() > 8) continue;
    EXPECT_FALSE(find_axiom_violation(m).has_value());
  }
}

TEST(MatroidPropertyTest, BridgeCountMatchesRawRanks) {
  const Matroid k4 = Matroid::graphic(complete_graph(4));
  const int n = k4.ground_size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const ItemSet s = subset_of(mask, n);
    int beta = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      ItemSet rest = s;
      rest.erase(rest.begin() + i);
      beta += k4.rank(s) - k4.rank(rest);
    }
    EXPECT_EQ(static_cast<int>(bridges(k4, s).size()), beta);
  }
}

// Property: graphic rank = n - kappa(F) by independent traversal.
TEST(MatroidPropertyTest, GraphicRankMatchesComponentCount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> vc(1, 8);
    const int v = vc(rng);
    std::uniform_int_distribution<int> pick(0, v - 1);
    GraphicMatroidSpec g{v, {}};
    for (int e = 0; e < 10; ++e) g.edges.push_back({pick(rng), pick(rng)});
    const Matroid m = Matroid::graphic(g);
    for (std::uint32_t mask = 0; mask < (1u << 10); mask += 7) {
      const ItemSet f = subset_of(mask, 10);
      EXPECT_EQ(m.rank(f), v - count_components(g, f));
    }
  }
}

TEST(MatroidTest, IncrementalTrackerAgreesWithRank) {
  const Matroid k4 = Matroid::graphic(complete_graph(4));
  IndependenceTracker tracker(k4);
  ItemSet seen;
  for (Item a : {5, 0, 3, 1, 4, 2}) {
    seen.push_back(a);
    tracker.add(a);
    EXPECT_EQ(tracker.rank(), k4.rank(seen));
  }
  tracker.reset();
  EXPECT_EQ(tracker.rank(), 0);
}

TEST(MatroidTest, CustomMatroidAndAxiomCheck) {
  const Matroid m = Matroid::custom(
      4, [](std::span<const Item> s) { return std::min<int>(s.size(), 2); },
      true);
  EXPECT_EQ(m.full_rank(), 2);
  EXPECT_EQ(m.kind(), MatroidKind::kCustom);
  EXPECT_THROW(Matroid::custom(
                   3,
                   [](std::span<const Item> s) {
                     return static_cast<int>(s.size() == 1 ? 1 : 0);
                   },
                   true),
               DomainError);
  const auto bases = all_bases(m);
  EXPECT_EQ(bases.size(), 6u);
}

TEST(MatroidTest, SolverMatchesFreeGreedy) {
  std::mt19937_64 rng(5);
  const Matroid k4 = Matroid::graphic(complete_graph(4));
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::uniform_costs(rng, 6);
    const GreedySolver solver(k4, c);
    for (Item a = 0; a < 6; ++a) {
      const CostEdits ex{.excluded = {a}};
      const CostEdits zero{.zeroed = {a}};
      EXPECT_NEAR(*solver.min_cost(ex),
                  try_greedy_min_basis(k4, c, ex)->nominal_cost, 1e-15);
      EXPECT_NEAR(*solver.min_cost(zero),
                  try_greedy_min_basis(k4, c, zero)->nominal_cost, 1e-15);
    }
  }
}

TEST(MatroidTest, EdgeListRoundTrip) {
  std::istringstream in("# triangle\n0 1\n\n1 2\n2 0\n");
  const GraphicMatroidSpec g = parse_edge_list(in);
  EXPECT_EQ(g.vertex_count, 3);
  ASSERT_EQ(g.edges.size(), 3u);
  std::istringstream again(format_edge_list(g));
  const GraphicMatroidSpec h = parse_edge_list(again);
  ASSERT_EQ(h.edges.size(), 3u);
  EXPECT_EQ(h.edges[2].u, 2);
  EXPECT_EQ(h.edges[2].v, 0);
  std::istringstream bad("0 x\n");
  EXPECT_THROW(parse_edge_list(bad), DomainError);
}

TEST(MatroidTest, NamedGraphs) {
  const auto k4 = complete_graph(4);
  ASSERT_EQ(k4.edges.size(), 6u);
  EXPECT_EQ(k4.edges[0].u, 0);
  EXPECT_EQ(k4.edges[0].v, 1);
  EXPECT_EQ(k4.edges[5].u, 2);
  EXPECT_EQ(k4.edges[5].v, 3);
  EXPECT_EQ(cycle_graph(5).edges.size(), 5u);
  EXPECT_EQ(path_graph(4).edges.size(), 3u);
}

}  // namespace
}  // namespace vcg_lab
