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

#ifndef VCG_LAB_SET_SYSTEM_HPP_
#define VCG_LAB_SET_SYSTEM_HPP_

#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "vcg_lab/matroid.hpp"

namespace vcg_lab {

// An explicit list of desired structures over items 0..ground_size-1.
// Structures are stored sorted; the list must be non-empty and duplicate-free.
class StructureFamily {
 public:
  StructureFamily(int ground_size, std::vector<ItemSet> structures);

  int ground_size() const { return ground_size_; }
  const std::vector<ItemSet>& structures() const { return structures_; }

  friend bool operator==(const StructureFamily&,
                         const StructureFamily&) = default;

 private:
  int ground_size_;
  std::vector<ItemSet> structures_;
};

struct StructureChoice {
  ItemSet structure;
  double cost = 0.0;
};

// Cheapest structure disjoint from edits.excluded, with edits.zeroed items at
// cost 0. Ties go to the lexicographically smallest item set. nullopt means
// every structure meets the excluded set (cost +inf).
std::optional<StructureChoice> min_structure(const StructureFamily& family,
                                             std::span<const double> costs,
                                             const CostEdits& edits = {});

// The two a1-a3 routes in the triangle: {{0}, {1, 2}}.
StructureFamily k3_path_family();

// Every basis of `matroid`, found by enumerating subsets through the rank
// oracle. Limited to 20 items.
StructureFamily basis_family(const Matroid& matroid);

// {"ground_size": n, "structures": [[...], ...]}
nlohmann::json to_json(const StructureFamily& family);
StructureFamily family_from_json(const nlohmann::json& j);

}  // namespace vcg_lab

#endif  // VCG_LAB_SET_SYSTEM_HPP_
