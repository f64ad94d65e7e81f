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

#include "vcg_lab/rank_integrals.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

namespace {

const Matroid& require_matroid(const Instance& instance) {
  const Matroid* m = instance.matroid();
  if (m == nullptr) throw DomainError("rank integrals need a matroid instance");
  return *m;
}

std::vector<Item> cost_order(std::span<const double> costs) {
  std::vector<Item> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return costs[a] < costs[b]; });
  return order;
}

}  // namespace

RankProfile rank_profile(const Instance& instance) {
  const Matroid& matroid = require_matroid(instance);
  const auto costs = instance.costs();
  const std::vector<Item> order = cost_order(costs);

  RankProfile p;
  p.rank_at.push_back(0);
  p.bridge_count_at.push_back(0);
  IndependenceTracker tracker(matroid);
  ItemSet prefix;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = costs[order[i]];
    while (i < order.size() && costs[order[i]] == t) {
      tracker.add(order[i]);
      prefix.push_back(order[i]);
      ++i;
    }
    p.breakpoints.push_back(t);
    p.rank_at.push_back(tracker.rank());
    p.bridge_count_at.push_back(
        static_cast<int>(bridges(matroid, prefix).size()));
  }
  return p;
}

double cost_via_rank_integral(const RankProfile& profile, int rank_a) {
  double total = 0.0;
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    const double length = profile.breakpoints[i] - profile.interval_start(i);
    total += (rank_a - profile.rank_at[i]) * length;
  }
  return total;
}

double vcg_via_bridge_integral(const RankProfile& profile, double nominal) {
  if (profile.bridge_count_at.back() != 0) {
    throw DivergentIntegralError(
        "bridge integral diverges: the ground set has bridges");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    const double length = profile.breakpoints[i] - profile.interval_start(i);
    total += profile.bridge_count_at[i] * length;
  }
  return nominal + total;
}

double threshold_via_integral(const Instance& instance, Item a) {
  const Matroid& matroid = require_matroid(instance);
  matroid.check_item(a);
  const auto costs = instance.costs();
  std::vector<Item> order = cost_order(costs);
  std::erase(order, a);

  // A(t) \ a grows along `order`; value = rk(S + a) - rk(S).
  ItemSet without;
  ItemSet with{a};
  auto gap = [&] { return matroid.rank(with) - matroid.rank(without); };
  double total = 0.0;
  double start = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = costs[order[i]];
    total += gap() * (t - start);
    while (i < order.size() && costs[order[i]] == t) {
      without.push_back(order[i]);
      with.push_back(order[i]);
      ++i;
    }
    start = t;
  }
  if (gap() != 0) {
    throw DivergentIntegralError("threshold integral diverges: item " +
                                 std::to_string(a) + " is a bridge");
  }
  return total;
}

double sumsq_via_integral(const RankProfile& profile, int rank_a) {
  double total = 0.0;
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    const double lo = profile.interval_start(i);
    const double hi = profile.breakpoints[i];
    total += (rank_a - profile.rank_at[i]) * (hi * hi - lo * lo);
  }
  return total;
}

std::string to_csv(const RankProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  out << "t_lo,t_hi,rank,bridges\n";
  for (std::size_t i = 0; i < profile.rank_at.size(); ++i) {
    out << profile.interval_start(i) << ',';
    if (i < profile.breakpoints.size()) {
      out << profile.breakpoints[i];
    } else {
      out << "inf";
    }
    out << ',' << profile.rank_at[i] << ',' << profile.bridge_count_at[i]
        << '\n';
  }
  return out.str();
}

}  // namespace vcg_lab
