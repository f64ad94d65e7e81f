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

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

StructureFamily::StructureFamily(int ground_size,
                                 std::vector<ItemSet> structures)
    : ground_size_(ground_size), structures_(std::move(structures)) {
  if (ground_size_ < 0) throw DomainError("negative ground size");
  if (structures_.empty()) throw DomainError("structure family is empty");
  std::set<ItemSet> seen;
  for (ItemSet& s : structures_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw DomainError("structure repeats an item");
    }
    for (Item a : s) {
      if (a < 0 || a >= ground_size_) {
        throw DomainError("structure item " + std::to_string(a) +
                          " outside ground set");
      }
    }
    if (!seen.insert(s).second) {
      throw DomainError("duplicate structure in family");
    }
  }
}

std::optional<StructureChoice> min_structure(const StructureFamily& family,
                                             std::span<const double> costs,
                                             const CostEdits& edits) {
  check_costs(costs, family.ground_size());
  std::vector<char> marks(family.ground_size(), 0);
  for (Item a : edits.excluded) {
    if (a < 0 || a >= family.ground_size()) {
      throw DomainError("excluded item outside ground set");
    }
    marks[a] = 1;
  }
  for (Item a : edits.zeroed) {
    if (a < 0 || a >= family.ground_size()) {
      throw DomainError("zeroed item outside ground set");
    }
    if (marks[a] == 1) throw DomainError("item both excluded and zeroed");
    marks[a] = 2;
  }

  const ItemSet* best = nullptr;
  double best_cost = 0.0;
  for (const ItemSet& s : family.structures()) {
    double cost = 0.0;
    bool allowed = true;
    for (Item a : s) {
      if (marks[a] == 1) {
        allowed = false;
        break;
      }
      if (marks[a] == 0) cost += costs[a];
    }
    if (!allowed) continue;
    if (best == nullptr || cost < best_cost ||
        (cost == best_cost && s < *best)) {
      best = &s;
      best_cost = cost;
    }
  }
  if (best == nullptr) return std::nullopt;
  return StructureChoice{*best, best_cost};
}

StructureFamily k3_path_family() { return StructureFamily(3, {{0}, {1, 2}}); }

StructureFamily basis_family(const Matroid& matroid) {
  const int n = matroid.ground_size();
  if (n > 20) throw RefusalError("basis enumeration limited to 20 items");
  const int r = matroid.full_rank();
  std::vector<ItemSet> bases;
  ItemSet s;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    s.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    if (matroid.rank(s) == r) bases.push_back(s);
  }
  return StructureFamily(n, std::move(bases));
}

nlohmann::json to_json(const StructureFamily& family) {
  return {{"ground_size", family.ground_size()},
          {"structures", family.structures()}};
}

StructureFamily family_from_json(const nlohmann::json& j) {
  try {
    return StructureFamily(j.at("ground_size").get<int>(),
                           j.at("structures").get<std::vector<ItemSet>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad structure family JSON: ") + e.what());
  }
}

}  // namespace vcg_lab
