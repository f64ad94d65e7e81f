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

#include "vcg_lab/set_system.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "vcg_lab/errors.hpp"

namespace vcg_lab {
namespace {

TEST(SetSystemTest, ValidatesFamilies) {
  EXPECT_THROW(StructureFamily(3, {}), DomainError);
  EXPECT_THROW(StructureFamily(3, {{0, 3}}), DomainError);
  EXPECT_THROW(StructureFamily(3, {{0, 0}}), DomainError);
  EXPECT_THROW(StructureFamily(3, {{0, 1}, {1, 0}}), DomainError);
  const StructureFamily f(3, {{2, 1}});
  EXPECT_EQ(f.structures()[0], (ItemSet{1, 2}));
}

TEST(SetSystemTest, K3PathMinimumStructure) {
  const StructureFamily fam = k3_path_family();
  EXPECT_EQ(fam.ground_size(), 3);
  EXPECT_EQ(fam.structures(), (std::vector<ItemSet>{{0}, {1, 2}}));

  auto c = min_structure(fam, std::vector<double>{0.3, 0.1, 0.1});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->structure, (ItemSet{1, 2}));
  EXPECT_DOUBLE_EQ(c->cost, 0.2);

  c = min_structure(fam, std::vector<double>{0.3, 0.1, 0.1}, {.excluded = {0}});
  EXPECT_EQ(c->structure, (ItemSet{1, 2}));

  c = min_structure(fam, std::vector<double>{0.5, 0.2, 0.2});
  EXPECT_DOUBLE_EQ(c->cost, 0.4);
  c = min_structure(fam, std::vector<double>{0.1, 0.3, 0.3});
  EXPECT_DOUBLE_EQ(c->cost, 0.1);
}

TEST(SetSystemTest, ZeroingAStructureGivesZero) {
  const StructureFamily fam(4, {{0, 1}, {1, 2}, {2, 3}});
  const std::vector<double> c = {0.4, 0.3, 0.2, 0.9};
  for (const ItemSet& s : fam.structures()) {
    auto r = min_structure(fam, c, {.zeroed = s});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->cost, 0.0);
  }
}

TEST(SetSystemTest, AllExcludedGivesNone) {
  const StructureFamily fam = k3_path_family();
  EXPECT_FALSE(min_structure(fam, std::vector<double>{0.1, 0.2, 0.3},
                             {.excluded = {0, 1}})
                   .has_value());
}

TEST(SetSystemTest, OverlappingEditsRejected) {
  EXPECT_THROW(min_structure(k3_path_family(),
                             std::vector<double>{0.1, 0.2, 0.3},
                             {.excluded = {0}, .zeroed = {0}}),
               DomainError);
}

TEST(SetSystemTest, TiesGoToLexicographicallySmallest) {
  const StructureFamily fam(3, {{1, 2}, {0, 2}});
  auto r = min_structure(fam, std::vector<double>{0.5, 0.5, 0.1});
  EXPECT_EQ(r->structure, (ItemSet{0, 2}));
}

// Property: on a matroid's basis family, brute-force minimum equals greedy.
TEST(SetSystemPropertyTest, BasisFamilyAgreesWithGreedy) {
  std::mt19937_64 rng(17);
  std::vector<Matroid> zoo = testing::bridgeless_zoo();
  zoo.push_back(Matroid::graphic(path_graph(5)));
  for (const Matroid& m : zoo) {
    const StructureFamily fam = basis_family(m);
    EXPECT_EQ(fam.structures().size(), testing::all_bases(m).size());
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = testing::uniform_costs(rng, m.ground_size());
      EXPECT_NEAR(min_structure(fam, c)->cost,
                  greedy_min_basis(m, c).nominal_cost, 1e-12);
    }
  }
}

TEST(SetSystemTest, JsonRoundTrip) {
  const StructureFamily fam(4, {{0, 3}, {1, 2}});
  const StructureFamily back = family_from_json(to_json(fam));
  EXPECT_EQ(back, fam);
  EXPECT_THROW(family_from_json(nlohmann::json{{"ground_size", 2}}),
               DomainError);
}

}  // namespace
}  // namespace vcg_lab
