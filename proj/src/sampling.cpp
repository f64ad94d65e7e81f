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

#include "vcg_lab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << what << " must be finite and > 0, got " << value;
    throw DomainError(msg.str());
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const Distribution& dist) {
  std::visit(Overloaded{
                 [](const UniformDist& u) { require_positive(u.d, "d"); },
                 [](const ExponentialDist& e) {
                   require_positive(e.rate, "rate");
                 },
                 [](const BetaDist& b) { require_positive(b.alpha, "alpha"); },
             },
             dist);
}

double cdf(const Distribution& dist, double x) {
  if (x <= 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [x](const UniformDist& u) { return std::min(x / u.d, 1.0); },
          [x](const ExponentialDist& e) { return -std::expm1(-e.rate * x); },
          [x](const BetaDist& b) {
            return x >= 1.0 ? 1.0 : std::pow(x, b.alpha);
          },
      },
      dist);
}

double mean(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformDist& u) { return u.d / 2.0; },
          [](const ExponentialDist& e) { return 1.0 / e.rate; },
          [](const BetaDist& b) { return b.alpha / (b.alpha + 1.0); },
      },
      dist);
}

double conditional_mean_below(const Distribution& dist, double v) {
  validate(dist);
  if (!(v > 0.0)) throw DomainError("conditional mean needs v > 0");
  return std::visit(
      Overloaded{
          [v](const UniformDist& u) { return 0.5 * std::min(v, u.d); },
          [v](const ExponentialDist& e) {
            // 1/rate - v / (e^{rate v} - 1)
            return 1.0 / e.rate - v / std::expm1(e.rate * v);
          },
          [v](const BetaDist& b) {
            return b.alpha / (b.alpha + 1.0) * std::min(v, 1.0);
          },
      },
      dist);
}

std::string describe(const Distribution& dist) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const UniformDist& u) { out << "uniform:" << u.d; },
                 [&](const ExponentialDist& e) { out << "exp:" << e.rate; },
                 [&](const BetaDist& b) { out << "beta:" << b.alpha; },
             },
             dist);
  return out.str();
}

Distribution parse_distribution(std::string_view spec,
                                std::optional<double> param) {
  std::string name(spec);
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    const std::string value = name.substr(colon + 1);
    name.resize(colon);
    if (param) throw DomainError("distribution parameter given twice");
    try {
      std::size_t used = 0;
      param = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw DomainError("bad distribution parameter '" + value + "'");
    }
  }
  Distribution dist;
  if (name == "uniform") {
    dist = UniformDist{param.value_or(1.0)};
  } else if (name == "exp" || name == "exponential") {
    dist = ExponentialDist{param.value_or(1.0)};
  } else if (name == "beta") {
    dist = BetaDist{param.value_or(1.0)};
  } else {
    throw DomainError("unknown distribution '" + name +
                      "' (expected uniform, exp or beta)");
  }
  validate(dist);
  return dist;
}

nlohmann::json to_json(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformDist& u) -> nlohmann::json {
            return {{"dist", "uniform"}, {"d", u.d}};
          },
          [](const ExponentialDist& e) -> nlohmann::json {
            return {{"dist", "exp"}, {"rate", e.rate}};
          },
          [](const BetaDist& b) -> nlohmann::json {
            return {{"dist", "beta"}, {"alpha", b.alpha}};
          },
      },
      dist);
}

Distribution distribution_from_json(const nlohmann::json& j) {
  try {
    const std::string name = j.at("dist").get<std::string>();
    Distribution dist;
    if (name == "uniform") {
      dist = UniformDist{j.value("d", 1.0)};
    } else if (name == "exp") {
      dist = ExponentialDist{j.value("rate", 1.0)};
    } else if (name == "beta") {
      dist = BetaDist{j.value("alpha", 1.0)};
    } else {
      throw DomainError("unknown distribution '" + name + "'");
    }
    validate(dist);
    return dist;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad distribution JSON: ") + e.what());
  }
}

CostModel::CostModel(std::vector<Distribution> per_item)
    : per_item_(std::move(per_item)) {
  for (const auto& d : per_item_) validate(d);
}

CostModel CostModel::iid(int items, const Distribution& dist) {
  if (items < 0) throw DomainError("negative item count");
  return CostModel(std::vector<Distribution>(items, dist));
}

bool CostModel::is_iid() const {
  return std::all_of(per_item_.begin(), per_item_.end(), [&](const auto& d) {
    return describe(d) == describe(per_item_.front());
  });
}

nlohmann::json to_json(const CostModel& model) {
  if (model.size() > 0 && model.is_iid()) {
    return {{"items", model.size()}, {"iid", to_json(model.at(0))}};
  }
  nlohmann::json items = nlohmann::json::array();
  for (const auto& d : model.per_item()) items.push_back(to_json(d));
  return {{"items", model.size()}, {"per_item", items}};
}

CostModel cost_model_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("iid")) {
      return CostModel::iid(j.at("items").get<int>(),
                            distribution_from_json(j.at("iid")));
    }
    std::vector<Distribution> per_item;
    for (const auto& d : j.at("per_item")) {
      per_item.push_back(distribution_from_json(d));
    }
    return CostModel(std::move(per_item));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad cost model JSON: ") + e.what());
  }
}

std::uint64_t derive_seed(const SeedSpec& seed, std::uint64_t salt) {
  std::uint64_t h = splitmix64(seed.master_seed);
  h = splitmix64(h ^ seed.replication_index);
  return splitmix64(h ^ (salt * 0xd1b54a32d192ed03ULL));
}

Rng make_rng(const SeedSpec& seed, std::uint64_t salt) {
  return Rng(derive_seed(seed, salt));
}

double open_unit(Rng& rng) {
  // 53 random bits, shifted by half an ulp off both endpoints.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double draw(const Distribution& dist, Rng& rng) {
  const double u = open_unit(rng);
  return std::visit(
      Overloaded{
          [u](const UniformDist& d) { return u * d.d; },
          [u](const ExponentialDist& e) { return -std::log(u) / e.rate; },
          [u](const BetaDist& b) { return std::pow(u, 1.0 / b.alpha); },
      },
      dist);
}

int sample_costs_into(const CostModel& model, const SeedSpec& seed,
                      std::span<double> out) {
  if (static_cast<int>(out.size()) != model.size()) {
    throw DomainError("output span does not match the cost model size");
  }
  std::vector<double> sorted(out.size());
  for (std::uint64_t salt = 0;; ++salt) {
    Rng rng = make_rng(seed, salt);
    for (int a = 0; a < model.size(); ++a) out[a] = draw(model.at(a), rng);
    std::copy(out.begin(), out.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      return static_cast<int>(salt);
    }
  }
}

std::vector<double> sample_costs(const CostModel& model, const SeedSpec& seed,
                                 int* redraws) {
  std::vector<double> costs(model.size());
  const int r = sample_costs_into(model, seed, costs);
  if (redraws != nullptr) *redraws = r;
  return costs;
}

}  // namespace vcg_lab
