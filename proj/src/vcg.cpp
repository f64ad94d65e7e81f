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

#include "vcg_lab/vcg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

int ground_size(const System& system) {
  return std::visit(
      [](const auto& s) { return s.ground_size(); }, system);
}

Instance::Instance(System system, std::vector<double> costs)
    : system_(std::move(system)), costs_(std::move(costs)) {
  check_costs(costs_, vcg_lab::ground_size(system_));
}

namespace {

MaybeCost difference(const MaybeCost& lhs, const MaybeCost& rhs) {
  if (!rhs) throw NoFiniteBasisError("instance has no finite structure");
  if (!lhs) return std::nullopt;
  return *lhs - *rhs;
}

void check_member(const Instance& instance, Item a) {
  if (a < 0 || a >= instance.ground_size()) {
    throw DomainError("item " + std::to_string(a) + " outside ground set");
  }
}

AuctionOutcome assemble(ItemSet structure, double nominal,
                        std::span<const double> costs,
                        const std::vector<MaybeCost>& infinite_removed,
                        const std::vector<MaybeCost>& zeroed) {
  const int n = static_cast<int>(costs.size());
  AuctionOutcome out;
  std::sort(structure.begin(), structure.end());
  out.min_structure = std::move(structure);
  out.nominal_cost = nominal;
  out.threshold.resize(n);
  out.incentive.resize(n);
  out.payment.resize(n);
  std::vector<char> selected(n, 0);
  for (Item a : out.min_structure) selected[a] = 1;

  double total = 0.0;
  double over = 0.0;
  bool finite = true;
  for (Item a = 0; a < n; ++a) {
    out.threshold[a] = difference(infinite_removed[a], zeroed[a]);
    out.incentive[a] = difference(infinite_removed[a], nominal);
    if (!out.threshold[a]) {
      out.bridges.push_back(a);
      finite = false;
      out.payment[a] = selected[a] ? MaybeCost() : MaybeCost(0.0);
      continue;
    }
    out.payment[a] = selected[a] ? *out.threshold[a] : 0.0;
    if (selected[a]) total += *out.threshold[a];
    over += std::max(0.0, *out.threshold[a] - costs[a]);
  }
  if (finite) {
    out.vcg_total = total;
    out.overpayment = over;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// AuctionEvaluator

AuctionEvaluator::AuctionEvaluator(const Instance& instance)
    : instance_(&instance) {
  if (const Matroid* m = instance.matroid()) {
    solver_.emplace(*m, instance.costs());
  }
}

MaybeCost AuctionEvaluator::min_cost(const CostEdits& edits) const {
  if (solver_) return solver_->min_cost(edits);
  auto choice = vcg_lab::min_structure(*instance_->family(), instance_->costs(), edits);
  if (!choice) return std::nullopt;
  return choice->cost;
}

ItemSet AuctionEvaluator::min_structure(const CostEdits& edits) const {
  ItemSet s;
  if (solver_) {
    auto r = solver_->solve(edits);
    if (!r) throw NoFiniteBasisError("no finite basis under these edits");
    s = std::move(r->basis);
  } else {
    auto choice =
        vcg_lab::min_structure(*instance_->family(), instance_->costs(), edits);
    if (!choice) throw NoFiniteBasisError("every structure is excluded");
    s = std::move(choice->structure);
  }
  std::sort(s.begin(), s.end());
  return s;
}

MaybeCost AuctionEvaluator::threshold(Item a) const {
  check_member(*instance_, a);
  return difference(min_cost({.excluded = {a}}), min_cost({.zeroed = {a}}));
}

MaybeCost AuctionEvaluator::incentive(Item a) const {
  check_member(*instance_, a);
  return difference(min_cost({.excluded = {a}}), min_cost());
}

MaybeCost AuctionEvaluator::extended_threshold(std::span<const Item> f,
                                               Item a) const {
  check_member(*instance_, a);
  ItemSet members(f.begin(), f.end());
  for (Item b : members) check_member(*instance_, b);
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw DomainError("F repeats an item");
  }
  if (!std::binary_search(members.begin(), members.end(), a)) {
    throw DomainError("extended threshold needs a in F");
  }
  if (const Matroid* m = instance_->matroid()) {
    if (m->rank(members) != static_cast<int>(members.size())) {
      throw DomainError("extended threshold needs an independent F");
    }
  }
  CostEdits rest_free_a_gone;
  rest_free_a_gone.excluded = {a};
  for (Item b : members) {
    if (b != a) rest_free_a_gone.zeroed.push_back(b);
  }
  CostEdits all_free;
  all_free.zeroed = members;
  return difference(min_cost(rest_free_a_gone), min_cost(all_free));
}

AuctionOutcome AuctionEvaluator::outcome() const {
  const int n = instance_->ground_size();
  std::vector<MaybeCost> removed(n);
  std::vector<MaybeCost> zeroed(n);
  for (Item a = 0; a < n; ++a) {
    removed[a] = min_cost({.excluded = {a}});
    zeroed[a] = min_cost({.zeroed = {a}});
  }
  ItemSet s = min_structure();
  const MaybeCost nominal = min_cost();
  return assemble(std::move(s), *nominal, instance_->costs(), removed, zeroed);
}

MaybeCost vcg_threshold(const Instance& instance, Item a) {
  return AuctionEvaluator(instance).threshold(a);
}

MaybeCost incentive_payment(const Instance& instance, Item a) {
  return AuctionEvaluator(instance).incentive(a);
}

AuctionOutcome run_auction(const Instance& instance) {
  return AuctionEvaluator(instance).outcome();
}

MaybeCost extended_threshold(const Instance& instance, std::span<const Item> f,
                             Item a) {
  return AuctionEvaluator(instance).extended_threshold(f, a);
}

// ---------------------------------------------------------------------------
// Brute force

AuctionOutcome brute_force_outcome(const StructureFamily& structures,
                                   std::span<const double> costs) {
  const int n = structures.ground_size();
  if (n > 20) throw RefusalError("brute force limited to 20 items");
  check_costs(costs, n);
  auto value = [&](const CostEdits& edits) -> MaybeCost {
    auto c = min_structure(structures, costs, edits);
    if (!c) return std::nullopt;
    return c->cost;
  };
  std::vector<MaybeCost> removed(n);
  std::vector<MaybeCost> zeroed(n);
  for (Item a = 0; a < n; ++a) {
    removed[a] = value({.excluded = {a}});
    zeroed[a] = value({.zeroed = {a}});
  }
  auto best = min_structure(structures, costs);
  return assemble(std::move(best->structure), best->cost, costs, removed,
                  zeroed);
}

AuctionOutcome brute_force_outcome(const Instance& instance) {
  if (instance.ground_size() > 20) {
    throw RefusalError("brute force limited to 20 items");
  }
  if (const Matroid* m = instance.matroid()) {
    return brute_force_outcome(basis_family(*m), instance.costs());
  }
  return brute_force_outcome(*instance.family(), instance.costs());
}

double sum_of_squares(std::span<const double> costs, const ItemSet& items) {
  double total = 0.0;
  for (Item a : items) total += costs[a] * costs[a];
  return total;
}

// ---------------------------------------------------------------------------
// Graphic fast path

TreeThresholds graphic_tree_thresholds(const GraphicMatroidSpec& graph,
                                       std::span<const double> costs) {
  const int m = static_cast<int>(graph.edges.size());
  const int nv = graph.vertex_count;
  check_costs(costs, m);
  std::vector<Item> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Item a, Item b) {
    return costs[a] < costs[b] || (costs[a] == costs[b] && a < b);
  });

  TreeThresholds out;
  UnionFind uf(nv);
  std::vector<char> in_tree(m, 0);
  for (Item a : order) {
    const Edge& e = graph.edges[a];
    if (uf.unite(e.u, e.v)) {
      in_tree[a] = 1;
      out.tree.push_back(a);
      out.nominal_cost += costs[a];
    }
  }

  // Root every tree component; parent_edge[v] is the tree edge to v's parent.
  std::vector<std::vector<std::pair<int, Item>>> adj(nv);
  for (Item a : out.tree) {
    const Edge& e = graph.edges[a];
    adj[e.u].push_back({e.v, a});
    adj[e.v].push_back({e.u, a});
  }
  std::vector<int> parent(nv, -1);
  std::vector<int> depth(nv, 0);
  std::vector<Item> parent_edge(nv, -1);
  std::vector<char> seen(nv, 0);
  std::vector<int> stack;
  for (int root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (auto [y, edge] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        parent[y] = x;
        depth[y] = depth[x] + 1;
        parent_edge[y] = edge;
        stack.push_back(y);
      }
    }
  }

  // jump.find(v) is the deepest ancestor of v (v included) whose parent edge
  // has not been claimed yet.
  std::vector<MaybeCost> claimed(m);
  UnionFind jump(nv);
  std::vector<int> top(nv);
  std::iota(top.begin(), top.end(), 0);
  auto climb = [&](int v) { return top[jump.find(v)]; };
  for (Item a : order) {
    if (in_tree[a]) continue;
    const Edge& e = graph.edges[a];
    int x = climb(e.u);
    int y = climb(e.v);
    while (x != y) {
      if (depth[x] < depth[y]) std::swap(x, y);
      claimed[parent_edge[x]] = costs[a];
      const int up = climb(parent[x]);
      jump.unite(x, parent[x]);
      top[jump.find(x)] = up;
      x = up;
    }
  }

  double total = 0.0;
  bool finite = true;
  out.tree_threshold.reserve(out.tree.size());
  for (Item a : out.tree) {
    out.tree_threshold.push_back(claimed[a]);
    if (claimed[a]) {
      total += *claimed[a];
    } else {
      finite = false;
    }
  }
  if (finite) out.vcg_total = total;
  return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json maybe_cost_json(const MaybeCost& value) {
  if (value) return *value;
  return "inf";
}

nlohmann::json to_json(const System& system) {
  if (const auto* f = std::get_if<StructureFamily>(&system)) {
    nlohmann::json j = to_json(*f);
    j["kind"] = "family";
    return j;
  }
  const Matroid& m = std::get<Matroid>(system);
  if (const auto* u = m.uniform_spec()) {
    return {{"kind", "uniform"}, {"n", u->n}, {"k", u->k}};
  }
  if (const auto* g = m.graphic_spec()) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g->edges) edges.push_back({e.u, e.v});
    return {{"kind", "graphic"},
            {"vertex_count", g->vertex_count},
            {"edges", edges}};
  }
  throw DomainError("custom matroids have no JSON form");
}

System system_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "uniform") {
      return Matroid::uniform(j.at("n").get<int>(), j.at("k").get<int>());
    }
    if (kind == "graphic") {
      GraphicMatroidSpec g;
      g.vertex_count = j.at("vertex_count").get<int>();
      for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      }
      return Matroid::graphic(std::move(g));
    }
    if (kind == "family") return family_from_json(j);
    throw DomainError("unknown system kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad system JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Instance& instance) {
  return {{"system", to_json(instance.system())},
          {"costs", std::vector<double>(instance.costs().begin(),
                                        instance.costs().end())}};
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    return Instance(system_from_json(j.at("system")),
                    j.at("costs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad instance JSON: ") + e.what());
  }
}

nlohmann::json to_json(const AuctionOutcome& outcome) {
  auto column = [](const std::vector<MaybeCost>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(maybe_cost_json(x));
    return a;
  };
  return {{"min_structure", outcome.min_structure},
          {"nominal_cost", outcome.nominal_cost},
          {"threshold", column(outcome.threshold)},
          {"incentive", column(outcome.incentive)},
          {"payment", column(outcome.payment)},
          {"vcg_total", maybe_cost_json(outcome.vcg_total)},
          {"overpayment", maybe_cost_json(outcome.overpayment)},
          {"bridges", outcome.bridges},
          {"infinite_total", outcome.infinite_total()}};
}

}  // namespace vcg_lab
