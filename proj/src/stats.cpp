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

#include "vcg_lab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

namespace {

void require(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw StatisticsError("need at least " + std::to_string(minimum) +
                          " samples, got " + std::to_string(n));
  }
}

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

nlohmann::json to_json(const Estimate& e) {
  return {{"value", e.value}, {"se", e.se}};
}

double sample_variance(std::span<const double> x) {
  require(x.size(), 2);
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

Estimate mean_estimate(std::span<const double> x) {
  require(x.size(), 2);
  return {mean_of(x),
          std::sqrt(sample_variance(x) / static_cast<double>(x.size()))};
}

Estimate covariance_estimate(std::span<const double> x,
                             std::span<const double> y) {
  if (x.size() != y.size()) throw StatisticsError("length mismatch");
  require(x.size(), 3);
  const double n = static_cast<double>(x.size());
  const double mx = mean_of(x);
  const double my = mean_of(y);
  std::vector<double> products(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    products[i] = (x[i] - mx) * (y[i] - my);
  }
  const Estimate raw = mean_estimate(products);
  return {raw.value * n / (n - 1.0), raw.se};
}

Estimate variance_estimate(std::span<const double> x) {
  return covariance_estimate(x, x);
}

double pearson_correlation(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) throw StatisticsError("length mismatch");
  require(x.size(), 3);
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw StatisticsError("constant sample");
  return sxy / std::sqrt(sxx * syy);
}

Estimate origin_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatisticsError("length mismatch");
  require(x.size(), 2);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (sxx == 0.0) throw StatisticsError("all regressors are zero");
  const double slope = sxy / sxx;
  double meat = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - slope * x[i];
    meat += x[i] * x[i] * r * r;
  }
  const double n = static_cast<double>(x.size());
  // HC1 small-sample factor n / (n - 1) for the one fitted parameter.
  return {slope, std::sqrt(meat * n / (n - 1.0)) / sxx};
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  require(samples.size(), 1);
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double kolmogorov_pvalue(double d, std::size_t n) {
  require(n, 1);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  // The alternating series converges slowly near 0, where the tail is 1 to
  // better than 1e-6 anyway.
  if (lambda < 0.27) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-12 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace vcg_lab
