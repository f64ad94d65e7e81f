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

#ifndef VCG_LAB_VCG_HPP_
#define VCG_LAB_VCG_HPP_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vcg_lab/matroid.hpp"
#include "vcg_lab/set_system.hpp"

namespace vcg_lab {

// A cost that may be +infinity. nullopt stands for "no finite structure",
// so no arithmetic ever touches an infinity.
using MaybeCost = std::optional<double>;

using System = std::variant<Matroid, StructureFamily>;

int ground_size(const System& system);

// A procurement instance: the desired structures (bases of a matroid or an
// explicit family) and one finite, non-negative cost per item.
class Instance {
 public:
  Instance(System system, std::vector<double> costs);

  const System& system() const { return system_; }
  std::span<const double> costs() const { return costs_; }
  double cost(Item a) const { return costs_[a]; }
  int ground_size() const { return static_cast<int>(costs_.size()); }

  const Matroid* matroid() const { return std::get_if<Matroid>(&system_); }
  const StructureFamily* family() const {
    return std::get_if<StructureFamily>(&system_);
  }

 private:
  System system_;
  std::vector<double> costs_;
};

// Outcome of the VCG procurement auction. For tied costs the minimum
// structure is chosen by the deterministic tie-break of the solver, and the
// strict selection rule (a selected <=> cost < threshold) may fail.
struct AuctionOutcome {
  ItemSet min_structure;  // sorted
  double nominal_cost = 0.0;
  std::vector<MaybeCost> threshold;
  std::vector<MaybeCost> incentive;
  // 0 for unselected items, the threshold for selected ones.
  std::vector<MaybeCost> payment;
  MaybeCost vcg_total;
  MaybeCost overpayment;
  // Items with infinite threshold: the ground-set bridges of a matroid, or
  // the items lying in every structure of a family.
  ItemSet bridges;

  bool infinite_total() const { return !vcg_total.has_value(); }
};

// Evaluates c* of an instance under edits, plus everything derived from it.
// Matroids go through one cached greedy order; families are scanned.
class AuctionEvaluator {
 public:
  explicit AuctionEvaluator(const Instance& instance);

  MaybeCost min_cost(const CostEdits& edits = {}) const;
  ItemSet min_structure(const CostEdits& edits = {}) const;

  MaybeCost threshold(Item a) const;
  MaybeCost incentive(Item a) const;
  MaybeCost extended_threshold(std::span<const Item> f, Item a) const;
  AuctionOutcome outcome() const;

 private:
  const Instance* instance_;
  std::optional<GreedySolver> solver_;
};

// c*(I with a deleted) - c*(I with a free). Infinite iff a is a bridge.
MaybeCost vcg_threshold(const Instance& instance, Item a);
// c*(I with a deleted) - c*(I); zero for unselected items.
MaybeCost incentive_payment(const Instance& instance, Item a);
AuctionOutcome run_auction(const Instance& instance);

// v(F, a): c* with F \ {a} free and a deleted, minus c* with all of F free.
// F must contain a and, for matroids, be independent.
MaybeCost extended_threshold(const Instance& instance,
                             std::span<const Item> f, Item a);

// Same contract as run_auction, by exhaustive enumeration of all structures
// (bases are listed through the rank oracle). At most 20 items.
AuctionOutcome brute_force_outcome(const Instance& instance);
// As above with the basis family supplied, for repeated calls.
AuctionOutcome brute_force_outcome(const StructureFamily& structures,
                                   std::span<const double> costs);

// Sum of c(a)^2 over the chosen minimum structure.
double sum_of_squares(std::span<const double> costs, const ItemSet& items);

// Replacement-edge thresholds for a graphic matroid: one Kruskal pass, then
// non-tree edges in increasing cost order claim the still-unclaimed tree edges
// on their tree path. Only selected edges get thresholds (the others are not
// paid). O(m log m).
struct TreeThresholds {
  ItemSet tree;  // in selection order
  double nominal_cost = 0.0;
  std::vector<MaybeCost> tree_threshold;  // parallel to `tree`
  MaybeCost vcg_total;
};

TreeThresholds graphic_tree_thresholds(const GraphicMatroidSpec& graph,
                                       std::span<const double> costs);

// JSON forms. Systems: {"kind": "uniform", "n", "k"},
// {"kind": "graphic", "vertex_count", "edges": [[u, v], ...]},
// {"kind": "family", "ground_size", "structures"}. Infinite values are
// written as the string "inf".
nlohmann::json to_json(const System& system);
System system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AuctionOutcome& outcome);
nlohmann::json maybe_cost_json(const MaybeCost& value);

}  // namespace vcg_lab

#endif  // VCG_LAB_VCG_HPP_
