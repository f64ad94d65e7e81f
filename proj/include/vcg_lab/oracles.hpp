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

#ifndef VCG_LAB_ORACLES_HPP_
#define VCG_LAB_ORACLES_HPP_

#include <cstdint>
#include <map>
#include <string>

#include <boost/rational.hpp>

#include "json.hpp"

namespace vcg_lab {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);

// A named set of reference values with the parameters that produced them.
struct ClosedForm {
  std::string name;
  std::map<std::string, double> parameters;
  std::map<std::string, double> values;
};

nlohmann::json to_json(const ClosedForm& form);

// Uniform matroid U_{n,k}, i.i.d. U(0,1) costs. Requires 1 <= k <= n-1.
struct UniformMatroidStats {
  Rational e_cstar;
  Rational e_vcg;
  Rational var_cstar;
  Rational var_vcg;
  Rational var_diff;  // Var(C^VCG - 2 c*)
};

UniformMatroidStats uniform_matroid_uniform_stats(int n, int k);

// Uniform matroid U_{n,k}, i.i.d. Exp(1) costs. Requires 1 <= k <= n-1.
struct MeanPair {
  Rational e_cstar;
  Rational e_vcg;
};

MeanPair uniform_matroid_exponential_means(int n, int k);

// Path family {{0}, {1, 2}} of K3 with i.i.d. U(0,1) costs.
MeanPair k3_path_uniform_means();
MeanPair k3_path_exponential_means();

// Joint density of (c*, C^VCG) on {0 <= x <= 1, 0 <= y <= 2}.
double k3_path_density(double x, double y);
// Marginal density of C^VCG on [0, 2].
double k3_path_vcg_density(double y);
// E(c* | C^VCG = y) for y in (0, 2].
double k3_path_cond_mean(double y);
// E(c* | lo <= C^VCG <= hi), 0 <= lo < hi <= 2.
double k3_path_bin_cond_mean(double lo, double hi);

struct MstConstants {
  double zeta3 = 0.0;
  double two_zeta3 = 0.0;
  double var_cstar_coeff = 0.0;  // 6 zeta(4) - 4 zeta(3)
  double var_vcg_coeff = 0.0;    // 24 zeta(4) - 18 zeta(3)
};

// Riemann zeta for s > 1.
double zeta(int s);
MstConstants mst_constants();

// alpha / (alpha + 1), alpha > 0.
double beta_ratio(double alpha);

// All constants above, as a JSON document.
nlohmann::json oracle_dump();

}  // namespace vcg_lab

#endif  // VCG_LAB_ORACLES_HPP_
