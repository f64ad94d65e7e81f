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

#ifndef VCG_LAB_STATS_HPP_
#define VCG_LAB_STATS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "json.hpp"

namespace vcg_lab {

// A point estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

nlohmann::json to_json(const Estimate& e);

// Sample mean and standard error (unbiased sample variance / n).
Estimate mean_estimate(std::span<const double> x);

// Unbiased sample variance. The standard error is that of the mean of the
// centred squares, the usual first-order (influence-function) error.
Estimate variance_estimate(std::span<const double> x);

// Unbiased sample covariance with the analogous standard error.
Estimate covariance_estimate(std::span<const double> x,
                             std::span<const double> y);

double sample_variance(std::span<const double> x);
double pearson_correlation(std::span<const double> x,
                           std::span<const double> y);

// Least squares slope of y on x through the origin, sum(xy) / sum(x^2), with
// a heteroskedasticity-robust (sandwich) standard error.
Estimate origin_slope(std::span<const double> x, std::span<const double> y);

// sup |F_n - F| for samples against a continuous CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail P(D_n > d) with the Stephens small-sample
// correction.
double kolmogorov_pvalue(double d, std::size_t n);

}  // namespace vcg_lab

#endif  // VCG_LAB_STATS_HPP_
