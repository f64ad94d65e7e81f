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

#ifndef VCG_LAB_RANK_INTEGRALS_HPP_
#define VCG_LAB_RANK_INTEGRALS_HPP_

#include <string>
#include <vector>

#include "vcg_lab/vcg.hpp"

namespace vcg_lab {

// Step functions t -> rk(A(t)) and t -> beta(A(t)), where A(t) is the set of
// items of cost <= t. Entry i describes [t_i, t_{i+1}) with t_0 = 0 and
// t_{m+1} = +inf, so both vectors have breakpoints.size() + 1 entries.
struct RankProfile {
  std::vector<double> breakpoints;  // distinct costs, ascending
  std::vector<int> rank_at;
  std::vector<int> bridge_count_at;

  double interval_start(std::size_t i) const {
    return i == 0 ? 0.0 : breakpoints[i - 1];
  }
};

// Requires a matroid instance.
RankProfile rank_profile(const Instance& instance);

// Integral of (rank_A - rk(A(t))) dt. Equals the greedy nominal cost.
double cost_via_rank_integral(const RankProfile& profile, int rank_a);

// nominal + integral of beta(A(t)) dt. Throws DivergentIntegralError when the
// ground set has bridges.
double vcg_via_bridge_integral(const RankProfile& profile, double nominal);

// Integral of (rk(A(t) + a) - rk(A(t) - a)) dt. Throws DivergentIntegralError
// when a is a bridge.
double threshold_via_integral(const Instance& instance, Item a);

// Integral of (rank_A - rk(A(t))) 2t dt, the sum of squared costs over the
// greedy basis.
double sumsq_via_integral(const RankProfile& profile, int rank_a);

// `t_lo,t_hi,rank,bridges` rows; the last t_hi is "inf".
std::string to_csv(const RankProfile& profile);

}  // namespace vcg_lab

#endif  // VCG_LAB_RANK_INTEGRALS_HPP_
