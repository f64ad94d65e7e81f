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

#ifndef VCG_LAB_TESTS_TEST_UTIL_HPP_
#define VCG_LAB_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "vcg_lab/matroid.hpp"

namespace vcg_lab::testing {

inline ItemSet subset_of(std::uint32_t mask, int n) {
  ItemSet s;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

// Every basis, found by enumerating all subsets.
inline std::vector<ItemSet> all_bases(const Matroid& m) {
  std::vector<ItemSet> out;
  const int n = m.ground_size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    ItemSet s = subset_of(mask, n);
    if (static_cast<int>(s.size()) == m.full_rank() &&
        m.rank(s) == m.full_rank()) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

inline double set_cost(const std::vector<double>& c, const ItemSet& s) {
  double t = 0.0;
  for (Item a : s) t += c[a];
  return t;
}

inline double brute_min_basis_cost(const Matroid& m,
                                   const std::vector<double>& c) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : all_bases(m)) best = std::min(best, set_cost(c, b));
  return best;
}

inline std::vector<double> uniform_costs(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n);
  for (double& x : c) x = u(rng);
  return c;
}

// Small bridgeless test matroids.
inline std::vector<Matroid> bridgeless_zoo() {
  std::vector<Matroid> out = {Matroid::graphic(complete_graph(3)),
                              Matroid::graphic(complete_graph(4)),
                              Matroid::graphic(cycle_graph(5))};
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) out.push_back(Matroid::uniform(n, k));
  }
  return out;
}

}  // namespace vcg_lab::testing

#endif  // VCG_LAB_TESTS_TEST_UTIL_HPP_
