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

#ifndef VCG_LAB_MATROID_HPP_
#define VCG_LAB_MATROID_HPP_

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vcg_lab {

using Item = int;
using ItemSet = std::vector<Item>;

enum class MatroidKind { kUniform, kGraphic, kCustom };

std::string to_string(MatroidKind kind);

struct UniformMatroidSpec {
  int n = 0;
  int k = 0;
};

struct Edge {
  int u = 0;
  int v = 0;
};

// Multigraph on vertices 0..vertex_count-1. Parallel edges and self-loops are
// allowed; a self-loop is a loop of the matroid.
struct GraphicMatroidSpec {
  int vertex_count = 0;
  std::vector<Edge> edges;
};

using RankFunction = std::function<int(std::span<const Item>)>;

// Union-find over 0..n-1 with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n = 0);

  void reset(int n);
  int find(int x);
  // Returns false when a and b were already connected.
  bool unite(int a, int b);
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_ = 0;
};

class Matroid;

// Incremental rank of a growing set. add() reports whether the rank went up;
// items that do not raise the rank are remembered only through their span.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(const Matroid& matroid);

  bool add(Item item);
  int rank() const { return rank_; }
  void reset();

 private:
  const Matroid* matroid_;
  int rank_ = 0;
  UnionFind components_;
  ItemSet independent_;
};

// A matroid given by its rank oracle. Values are immutable and cheap to copy;
// the graph or custom oracle behind them is shared.
class Matroid {
 public:
  // U_{n,k}: every k-subset is a basis. Requires 0 <= k <= n.
  static Matroid uniform(int n, int k);
  static Matroid graphic(GraphicMatroidSpec spec);
  // ground_size elements, rank given by `rank`. With check_axioms the oracle
  // is verified exhaustively (ground_size <= 12) and a DomainError is thrown on
  // the first violated axiom.
  static Matroid custom(int ground_size, RankFunction rank,
                        bool check_axioms = false);

  int ground_size() const { return ground_size_; }
  MatroidKind kind() const;
  int full_rank() const { return full_rank_; }

  // Rank of `subset`. Items must be in range and pairwise distinct.
  int rank(std::span<const Item> subset) const;

  const UniformMatroidSpec* uniform_spec() const;
  const GraphicMatroidSpec* graphic_spec() const;

  void check_item(Item item) const;

 private:
  struct Custom {
    RankFunction rank;
  };
  using Impl = std::variant<UniformMatroidSpec,
                            std::shared_ptr<const GraphicMatroidSpec>, Custom>;

  Matroid(int ground_size, Impl impl);
  int raw_rank(std::span<const Item> subset) const;

  int ground_size_ = 0;
  int full_rank_ = 0;
  Impl impl_;

  friend class IndependenceTracker;
};

// Named graphs. Edges of complete_graph are listed as (i, j), i < j, in
// lexicographic order.
GraphicMatroidSpec complete_graph(int n);
GraphicMatroidSpec cycle_graph(int n);
GraphicMatroidSpec path_graph(int n);

// Reads `u v` pairs, one per line, 0-based. Blank lines and lines starting
// with '#' are skipped. vertex_count is one more than the largest vertex.
GraphicMatroidSpec parse_edge_list(std::istream& in);
std::string format_edge_list(const GraphicMatroidSpec& spec);

// Number of connected components of (V, F) counted by graph traversal,
// independent of the union-find rank path.
int count_components(const GraphicMatroidSpec& spec, std::span<const Item> f);

// { a in subset : rank(subset \ a) < rank(subset) }, in the order of subset.
ItemSet bridges(const Matroid& matroid, std::span<const Item> subset);
ItemSet ground_bridges(const Matroid& matroid);
bool is_bridgeless(const Matroid& matroid);

// Checks monotonicity, submodularity and unit increase over every pair of
// subsets. Returns a description of the first violation.
std::optional<std::string> find_axiom_violation(const Matroid& matroid);

// Per-instance cost edits: excluded items act as cost +inf, zeroed items as 0.
struct CostEdits {
  ItemSet excluded = {};
  ItemSet zeroed = {};
};

struct BasisResult {
  ItemSet basis;  // in selection order
  double nominal_cost = 0.0;
};

// Greedy minimum basis. Items are scanned by (effective cost, index); loops
// and excluded items are never selected. Returns nullopt when the excluded
// items leave no basis of full rank.
std::optional<BasisResult> try_greedy_min_basis(const Matroid& matroid,
                                                std::span<const double> costs,
                                                const CostEdits& edits = {});

// As above but throws NoFiniteBasisError instead of returning nullopt.
BasisResult greedy_min_basis(const Matroid& matroid,
                             std::span<const double> costs,
                             const CostEdits& edits = {});

// Validates a per-item cost vector: right length, finite, non-negative.
void check_costs(std::span<const double> costs, int ground_size);

// Sorts the items once and answers many edited greedy queries against the
// same costs. Zeroed items are taken first (by index); the rest follow the
// cached (cost, index) order. Equal to try_greedy_min_basis except possibly
// in which of several zero-cost items is picked.
class GreedySolver {
 public:
  GreedySolver(const Matroid& matroid, std::span<const double> costs);

  std::optional<BasisResult> solve(const CostEdits& edits = {}) const;
  // Nominal cost only; cheaper than solve().
  std::optional<double> min_cost(const CostEdits& edits = {}) const;

  const std::vector<Item>& order() const { return order_; }

 private:
  template <typename Visit>
  bool run(const CostEdits& edits, Visit&& visit) const;

  Matroid matroid_;
  std::vector<double> costs_;
  std::vector<Item> order_;
};

}  // namespace vcg_lab

#endif  // VCG_LAB_MATROID_HPP_
