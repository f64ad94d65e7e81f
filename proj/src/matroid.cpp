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

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <utility>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

std::string to_string(MatroidKind kind) {
  switch (kind) {
    case MatroidKind::kUniform:
      return "uniform";
    case MatroidKind::kGraphic:
      return "graphic";
    case MatroidKind::kCustom:
      return "custom";
  }
  return "unknown";
}

UnionFind::UnionFind(int n) { reset(n); }

void UnionFind::reset(int n) {
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0);
  size_.assign(n, 1);
  components_ = n;
}

int UnionFind::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

// ---------------------------------------------------------------------------
// Matroid

Matroid::Matroid(int ground_size, Impl impl)
    : ground_size_(ground_size), impl_(std::move(impl)) {
  std::vector<Item> all(ground_size_);
  std::iota(all.begin(), all.end(), 0);
  full_rank_ = raw_rank(all);
}

Matroid Matroid::uniform(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("uniform matroid needs 0 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  }
  return Matroid(n, UniformMatroidSpec{n, k});
}

Matroid Matroid::graphic(GraphicMatroidSpec spec) {
  if (spec.vertex_count <= 0) {
    throw DomainError("graphic matroid needs a positive vertex count");
  }
  for (const Edge& e : spec.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= spec.vertex_count ||
        e.v >= spec.vertex_count) {
      throw DomainError("edge (" + std::to_string(e.u) + ", " +
                        std::to_string(e.v) + ") out of vertex range");
    }
  }
  const int m = static_cast<int>(spec.edges.size());
  return Matroid(m, std::make_shared<const GraphicMatroidSpec>(std::move(spec)));
}

Matroid Matroid::custom(int ground_size, RankFunction rank, bool check_axioms) {
  if (ground_size < 0) throw DomainError("negative ground size");
  if (!rank) throw DomainError("custom matroid needs a rank function");
  Matroid m(ground_size, Custom{std::move(rank)});
  if (check_axioms) {
    if (ground_size > 12) {
      throw DomainError("axiom check limited to ground sets of <= 12 items");
    }
    if (auto violation = find_axiom_violation(m)) {
      throw DomainError("rank oracle violates matroid axioms: " + *violation);
    }
  }
  return m;
}

MatroidKind Matroid::kind() const {
  switch (impl_.index()) {
    case 0:
      return MatroidKind::kUniform;
    case 1:
      return MatroidKind::kGraphic;
    default:
      return MatroidKind::kCustom;
  }
}

const UniformMatroidSpec* Matroid::uniform_spec() const {
  return std::get_if<UniformMatroidSpec>(&impl_);
}

const GraphicMatroidSpec* Matroid::graphic_spec() const {
  auto* p = std::get_if<std::shared_ptr<const GraphicMatroidSpec>>(&impl_);
  return p ? p->get() : nullptr;
}

void Matroid::check_item(Item item) const {
  if (item < 0 || item >= ground_size_) {
    throw DomainError("item " + std::to_string(item) +
                      " outside ground set of size " +
                      std::to_string(ground_size_));
  }
}

int Matroid::rank(std::span<const Item> subset) const {
  std::vector<char> seen(ground_size_, 0);
  for (Item a : subset) {
    check_item(a);
    if (seen[a]) {
      throw DomainError("item " + std::to_string(a) + " repeated in subset");
    }
    seen[a] = 1;
  }
  return raw_rank(subset);
}

int Matroid::raw_rank(std::span<const Item> subset) const {
  struct Visitor {
    std::span<const Item> subset;
    int operator()(const UniformMatroidSpec& u) const {
      return std::min(static_cast<int>(subset.size()), u.k);
    }
    int operator()(const std::shared_ptr<const GraphicMatroidSpec>& g) const {
      UnionFind uf(g->vertex_count);
      int r = 0;
      for (Item a : subset) {
        const Edge& e = g->edges[a];
        if (uf.unite(e.u, e.v)) ++r;
      }
      return r;
    }
    int operator()(const Custom& c) const { return c.rank(subset); }
  };
  return std::visit(Visitor{subset}, impl_);
}

// ---------------------------------------------------------------------------
// IndependenceTracker

IndependenceTracker::IndependenceTracker(const Matroid& matroid)
    : matroid_(&matroid) {
  reset();
}

void IndependenceTracker::reset() {
  rank_ = 0;
  independent_.clear();
  if (const auto* g = matroid_->graphic_spec()) {
    components_.reset(g->vertex_count);
  }
}

bool IndependenceTracker::add(Item item) {
  bool grew = false;
  switch (matroid_->kind()) {
    case MatroidKind::kUniform:
      grew = rank_ < matroid_->uniform_spec()->k;
      break;
    case MatroidKind::kGraphic: {
      const Edge& e = matroid_->graphic_spec()->edges[item];
      grew = components_.unite(e.u, e.v);
      break;
    }
    case MatroidKind::kCustom:
      independent_.push_back(item);
      grew = matroid_->raw_rank(independent_) > rank_;
      if (!grew) independent_.pop_back();
      break;
  }
  if (grew) ++rank_;
  return grew;
}

// ---------------------------------------------------------------------------
// Named graphs and edge lists

GraphicMatroidSpec complete_graph(int n) {
  if (n < 1) throw DomainError("complete graph needs n >= 1");
  GraphicMatroidSpec g{n, {}};
  g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  }
  return g;
}

GraphicMatroidSpec cycle_graph(int n) {
  if (n < 2) throw DomainError("cycle graph needs n >= 2");
  GraphicMatroidSpec g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

GraphicMatroidSpec path_graph(int n) {
  if (n < 1) throw DomainError("path graph needs n >= 1");
  GraphicMatroidSpec g{n, {}};
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

GraphicMatroidSpec parse_edge_list(std::istream& in) {
  GraphicMatroidSpec g;
  int max_vertex = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw DomainError("edge list line " + std::to_string(line_no) +
                        ": expected `u v`");
    }
    if (u < 0 || v < 0 || u > 1'000'000'000 || v > 1'000'000'000) {
      throw DomainError("edge list line " + std::to_string(line_no) +
                        ": vertex out of range");
    }
    g.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
  }
  g.vertex_count = max_vertex + 1;
  if (g.vertex_count == 0) throw DomainError("edge list is empty");
  return g;
}

std::string format_edge_list(const GraphicMatroidSpec& spec) {
  std::ostringstream out;
  for (const Edge& e : spec.edges) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

int count_components(const GraphicMatroidSpec& spec,
                     std::span<const Item> f) {
  std::vector<std::vector<int>> adj(spec.vertex_count);
  for (Item a : f) {
    const Edge& e = spec.edges.at(a);
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> visited(spec.vertex_count, 0);
  std::vector<int> stack;
  int components = 0;
  for (int s = 0; s < spec.vertex_count; ++s) {
    if (visited[s]) continue;
    ++components;
    visited[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (!visited[y]) {
          visited[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return components;
}

// ---------------------------------------------------------------------------
// Bridges and axioms

ItemSet bridges(const Matroid& matroid, std::span<const Item> subset) {
  const int full = matroid.rank(subset);
  ItemSet result;
  ItemSet rest;
  rest.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    rest.clear();
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (j != i) rest.push_back(subset[j]);
    }
    if (matroid.rank(rest) < full) result.push_back(subset[i]);
  }
  return result;
}

ItemSet ground_bridges(const Matroid& matroid) {
  ItemSet all(matroid.ground_size());
  std::iota(all.begin(), all.end(), 0);
  return bridges(matroid, all);
}

bool is_bridgeless(const Matroid& matroid) {
  return ground_bridges(matroid).empty();
}

namespace {

ItemSet items_of_mask(unsigned mask) {
  ItemSet s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s.push_back(i);
  }
  return s;
}

}  // namespace

std::optional<std::string> find_axiom_violation(const Matroid& matroid) {
  const int n = matroid.ground_size();
  if (n > 16) throw DomainError("axiom check limited to <= 16 items");
  const unsigned count = 1u << n;
  std::vector<int> r(count);
  for (unsigned mask = 0; mask < count; ++mask) {
    r[mask] = matroid.rank(items_of_mask(mask));
  }
  if (r[0] != 0) return "rank(empty) != 0";
  for (unsigned s = 0; s < count; ++s) {
    const int size = std::popcount(s);
    if (r[s] < 0 || r[s] > size) {
      return "rank out of [0, |S|] at mask " + std::to_string(s);
    }
    for (int a = 0; a < n; ++a) {
      const unsigned t = s | (1u << a);
      if (r[t] < r[s] || r[t] > r[s] + 1) {
        return "monotonicity/unit increase fails at mask " +
               std::to_string(s) + " + item " + std::to_string(a);
      }
    }
  }
  for (unsigned s = 0; s < count; ++s) {
    for (unsigned t = 0; t < count; ++t) {
      if (r[s | t] + r[s & t] > r[s] + r[t]) {
        return "submodularity fails at masks " + std::to_string(s) + ", " +
               std::to_string(t);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Greedy

void check_costs(std::span<const double> costs, int ground_size) {
  if (static_cast<int>(costs.size()) != ground_size) {
    throw DomainError("cost vector has " + std::to_string(costs.size()) +
                      " entries, ground set has " +
                      std::to_string(ground_size));
  }
  for (double c : costs) {
    if (!std::isfinite(c) || c < 0.0) {
      throw DomainError("costs must be finite and non-negative");
    }
  }
}

namespace {

std::vector<char> edit_marks(const CostEdits& edits, const Matroid& matroid) {
  // 0 = untouched, 1 = excluded, 2 = zeroed
  std::vector<char> marks(matroid.ground_size(), 0);
  for (Item a : edits.excluded) {
    matroid.check_item(a);
    marks[a] = 1;
  }
  for (Item a : edits.zeroed) {
    matroid.check_item(a);
    if (marks[a] == 1) {
      throw DomainError("item " + std::to_string(a) +
                        " both excluded and zeroed");
    }
    marks[a] = 2;
  }
  return marks;
}

}  // namespace

std::optional<BasisResult> try_greedy_min_basis(const Matroid& matroid,
                                                std::span<const double> costs,
                                                const CostEdits& edits) {
  check_costs(costs, matroid.ground_size());
  const std::vector<char> marks = edit_marks(edits, matroid);
  auto effective = [&](Item a) { return marks[a] == 2 ? 0.0 : costs[a]; };

  std::vector<Item> order;
  order.reserve(costs.size());
  for (Item a = 0; a < matroid.ground_size(); ++a) {
    if (marks[a] != 1) order.push_back(a);
  }
  std::sort(order.begin(), order.end(), [&](Item a, Item b) {
    const double ca = effective(a);
    const double cb = effective(b);
    return ca < cb || (ca == cb && a < b);
  });

  BasisResult result;
  IndependenceTracker tracker(matroid);
  for (Item a : order) {
    if (tracker.rank() == matroid.full_rank()) break;
    if (tracker.add(a)) {
      result.basis.push_back(a);
      result.nominal_cost += effective(a);
    }
  }
  if (tracker.rank() < matroid.full_rank()) return std::nullopt;
  return result;
}

BasisResult greedy_min_basis(const Matroid& matroid,
                             std::span<const double> costs,
                             const CostEdits& edits) {
  auto result = try_greedy_min_basis(matroid, costs, edits);
  if (!result) {
    throw NoFiniteBasisError(
        "no finite basis: excluded items include a bridge of the matroid");
  }
  return *std::move(result);
}

GreedySolver::GreedySolver(const Matroid& matroid,
                           std::span<const double> costs)
    : matroid_(matroid), costs_(costs.begin(), costs.end()) {
  check_costs(costs_, matroid_.ground_size());
  order_.resize(costs_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(), [&](Item a, Item b) {
    return costs_[a] < costs_[b] || (costs_[a] == costs_[b] && a < b);
  });
}

template <typename Visit>
bool GreedySolver::run(const CostEdits& edits, Visit&& visit) const {
  const int full = matroid_.full_rank();
  IndependenceTracker tracker(matroid_);
  ItemSet zeroed = edits.zeroed;
  std::sort(zeroed.begin(), zeroed.end());
  for (Item a : zeroed) {
    matroid_.check_item(a);
    if (std::find(edits.excluded.begin(), edits.excluded.end(), a) !=
        edits.excluded.end()) {
      throw DomainError("item " + std::to_string(a) +
                        " both excluded and zeroed");
    }
    if (tracker.rank() == full) break;
    if (tracker.add(a)) visit(a, 0.0);
  }
  for (Item a : edits.excluded) matroid_.check_item(a);
  auto listed = [](const ItemSet& s, Item a) {
    return std::find(s.begin(), s.end(), a) != s.end();
  };
  for (Item a : order_) {
    if (tracker.rank() == full) break;
    if (listed(edits.excluded, a) || listed(zeroed, a)) continue;
    if (tracker.add(a)) visit(a, costs_[a]);
  }
  return tracker.rank() == full;
}

std::optional<BasisResult> GreedySolver::solve(const CostEdits& edits) const {
  BasisResult result;
  const bool ok = run(edits, [&](Item a, double c) {
    result.basis.push_back(a);
    result.nominal_cost += c;
  });
  if (!ok) return std::nullopt;
  return result;
}

std::optional<double> GreedySolver::min_cost(const CostEdits& edits) const {
  double total = 0.0;
  const bool ok = run(edits, [&](Item, double c) { total += c; });
  if (!ok) return std::nullopt;
  return total;
}

}  // namespace vcg_lab
