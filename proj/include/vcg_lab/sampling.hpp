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

#ifndef VCG_LAB_SAMPLING_HPP_
#define VCG_LAB_SAMPLING_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vcg_lab/matroid.hpp"

namespace vcg_lab {

// U(0, d).
struct UniformDist {
  double d = 1.0;
};

// Exp(rate), mean 1 / rate.
struct ExponentialDist {
  double rate = 1.0;
};

// B(alpha, 1): density alpha x^(alpha - 1) on (0, 1).
struct BetaDist {
  double alpha = 1.0;
};

using Distribution = std::variant<UniformDist, ExponentialDist, BetaDist>;

// Throws DomainError unless the parameter is finite and positive.
void validate(const Distribution& dist);

double cdf(const Distribution& dist, double x);
double mean(const Distribution& dist);

// E[X | X <= v] in closed form. v must be positive.
double conditional_mean_below(const Distribution& dist, double v);

std::string describe(const Distribution& dist);

// "uniform", "exp", "beta" with the parameter from `param`, or the inline
// forms "uniform:2", "exp:0.5", "beta:2". Defaults: d = 1, rate = 1,
// alpha = 1.
Distribution parse_distribution(std::string_view spec,
                                std::optional<double> param = std::nullopt);

nlohmann::json to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j);

// Independent per-item cost distributions.
class CostModel {
 public:
  explicit CostModel(std::vector<Distribution> per_item);
  static CostModel iid(int items, const Distribution& dist);

  int size() const { return static_cast<int>(per_item_.size()); }
  const Distribution& at(Item a) const { return per_item_[a]; }
  const std::vector<Distribution>& per_item() const { return per_item_; }
  bool is_iid() const;

 private:
  std::vector<Distribution> per_item_;
};

nlohmann::json to_json(const CostModel& model);
CostModel cost_model_from_json(const nlohmann::json& j);

// Identifies one replication. The costs drawn for it are a pure function of
// these two numbers.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;
};

using Rng = std::mt19937_64;

// Counter-based seed: mixes master seed, replication index and salt with
// SplitMix64 finalizers.
std::uint64_t derive_seed(const SeedSpec& seed, std::uint64_t salt = 0);
Rng make_rng(const SeedSpec& seed, std::uint64_t salt = 0);

// Uniform on the open interval (0, 1); never returns 0 or 1.
double open_unit(Rng& rng);
double draw(const Distribution& dist, Rng& rng);

// Draws one cost vector. If the draw contains exact ties it is redrawn with
// the next salt; the number of redraws is returned.
int sample_costs_into(const CostModel& model, const SeedSpec& seed,
                      std::span<double> out);
std::vector<double> sample_costs(const CostModel& model, const SeedSpec& seed,
                                 int* redraws = nullptr);

}  // namespace vcg_lab

#endif  // VCG_LAB_SAMPLING_HPP_
