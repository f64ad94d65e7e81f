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

#include "vcg_lab/oracles.hpp"

#include <cmath>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {

namespace {

void check_uniform_params(int n, int k) {
  if (k < 1 || k > n - 1) {
    throw DomainError("closed forms need 1 <= k <= n-1 (k = n makes every "
                      "item a bridge)");
  }
}

// Antiderivatives (from 0) of the marginal density of C^VCG and of
// y -> E(c* 1{C^VCG in dy}) / dy for the K3 path family.
double vcg_mass_below(double y) {
  if (y <= 1.0) return 5.0 * y * y * y / 12.0;
  const double u = 2.0 - y;
  return 5.0 / 12.0 + (0.5 - u * u / 2.0) + (1.0 / 12.0 - u * u * u / 12.0);
}

double cstar_mass_below(double y) {
  if (y <= 1.0) return y * y * y * y / 6.0;
  const double u = 2.0 - y;
  return 1.0 / 6.0 + (0.25 - u * u / 4.0) + (1.0 / 24.0 - u * u * u * u / 24.0);
}

}  // namespace

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

nlohmann::json to_json(const ClosedForm& form) {
  return {{"name", form.name},
          {"parameters", form.parameters},
          {"values", form.values}};
}

UniformMatroidStats uniform_matroid_uniform_stats(int n, int k) {
  check_uniform_params(n, k);
  const std::int64_t N = n;
  const std::int64_t K = k;
  UniformMatroidStats s;
  s.e_cstar = Rational(K * (K + 1), 2 * (N + 1));
  s.e_vcg = Rational(K * (K + 1), N + 1);
  s.var_cstar =
      Rational(K * (K + 1) * (4 * N * K + 2 * N + K + 2 - 3 * K * K),
               12 * (N + 1) * (N + 1) * (N + 2));
  s.var_vcg = Rational(K * K * (K + 1) * (N - K), (N + 1) * (N + 1) * (N + 2));
  s.var_diff = Rational(K * (K + 1) * (K + 2), 3 * (N + 1) * (N + 2));
  return s;
}

MeanPair uniform_matroid_exponential_means(int n, int k) {
  check_uniform_params(n, k);
  MeanPair m;
  for (int j = 1; j <= k; ++j) m.e_cstar += Rational(j, n - k + j);
  Rational h;
  for (int j = 1; j <= k + 1; ++j) h += Rational(1, n - j + 1);
  m.e_vcg = h * k;
  return m;
}

MeanPair k3_path_uniform_means() { return {Rational(11, 24), Rational(13, 12)}; }

MeanPair k3_path_exponential_means() { return {Rational(3, 4), Rational(5, 2)}; }

double k3_path_density(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 2.0)) {
    throw DomainError("K3 path density is supported on [0,1] x [0,2]");
  }
  double f = 0.0;
  if (x <= y && y <= 1.0) f += y;
  if (y > 1.0) f += 2.0 - y;
  if (x <= std::min(y, 2.0 - y)) f += x / 2.0;
  return f;
}

double k3_path_vcg_density(double y) {
  if (!(y >= 0.0 && y <= 2.0)) {
    throw DomainError("C^VCG is supported on [0, 2]");
  }
  if (y <= 1.0) return 5.0 * y * y / 4.0;
  const double u = 2.0 - y;
  return u + u * u / 4.0;
}

double k3_path_cond_mean(double y) {
  if (!(y > 0.0 && y <= 2.0)) {
    throw DomainError("conditional mean is defined for y in (0, 2]");
  }
  if (y <= 1.0) return 8.0 * y / 15.0;
  const double u = 2.0 - y;
  return (6.0 + 2.0 * u * u) / (12.0 + 3.0 * u);
}

double k3_path_bin_cond_mean(double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 2.0)) {
    throw DomainError("bin must satisfy 0 <= lo < hi <= 2");
  }
  return (cstar_mass_below(hi) - cstar_mass_below(lo)) /
         (vcg_mass_below(hi) - vcg_mass_below(lo));
}

double zeta(int s) {
  if (s < 2) throw DomainError("zeta needs s >= 2");
  // Direct sum to N-1, then Euler-Maclaurin tail through the B_6 term.
  constexpr int kN = 1000;
  long double sum = 0.0L;
  for (int j = kN - 1; j >= 1; --j) sum += std::pow(static_cast<long double>(j), -s);
  const long double n = kN;
  const long double ss = s;
  long double tail = std::pow(n, 1 - ss) / (ss - 1) + std::pow(n, -ss) / 2;
  tail += ss * std::pow(n, -ss - 1) / 12;
  tail -= ss * (ss + 1) * (ss + 2) * std::pow(n, -ss - 3) / 720;
  tail += ss * (ss + 1) * (ss + 2) * (ss + 3) * (ss + 4) * std::pow(n, -ss - 5) /
          30240;
  return static_cast<double>(sum + tail);
}

MstConstants mst_constants() {
  MstConstants c;
  const double z3 = zeta(3);
  const double z4 = zeta(4);
  c.zeta3 = z3;
  c.two_zeta3 = 2.0 * z3;
  c.var_cstar_coeff = 6.0 * z4 - 4.0 * z3;
  c.var_vcg_coeff = 24.0 * z4 - 18.0 * z3;
  return c;
}

double beta_ratio(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  return alpha / (alpha + 1.0);
}

nlohmann::json oracle_dump() {
  nlohmann::json out;
  nlohmann::json eu = nlohmann::json::array();
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto s = uniform_matroid_uniform_stats(n, k);
      eu.push_back(to_json(ClosedForm{
          "uniform_matroid_uniform",
          {{"n", n}, {"k", k}},
          {{"E_cstar", to_double(s.e_cstar)},
           {"E_vcg", to_double(s.e_vcg)},
           {"Var_cstar", to_double(s.var_cstar)},
           {"Var_vcg", to_double(s.var_vcg)},
           {"Var_diff", to_double(s.var_diff)}}}));
    }
  }
  nlohmann::json eexp = nlohmann::json::array();
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto m = uniform_matroid_exponential_means(n, k);
      eexp.push_back(to_json(ClosedForm{
          "uniform_matroid_exponential",
          {{"n", n}, {"k", k}},
          {{"E_cstar", to_double(m.e_cstar)}, {"E_vcg", to_double(m.e_vcg)}}}));
    }
  }
  const auto pu = k3_path_uniform_means();
  const auto pe = k3_path_exponential_means();
  nlohmann::json cond = nlohmann::json::array();
  for (int i = 1; i <= 20; ++i) {
    const double y = 0.1 * i;
    cond.push_back({{"y", y}, {"cond_mean", k3_path_cond_mean(y)}});
  }
  const auto mst = mst_constants();
  out["uniform_matroid_uniform"] = eu;
  out["uniform_matroid_exponential"] = eexp;
  out["k3_path_uniform"] = to_json(ClosedForm{
      "k3_path_uniform",
      {},
      {{"E_cstar", to_double(pu.e_cstar)}, {"E_vcg", to_double(pu.e_vcg)}}});
  out["k3_path_exponential"] = to_json(ClosedForm{
      "k3_path_exponential",
      {},
      {{"E_cstar", to_double(pe.e_cstar)}, {"E_vcg", to_double(pe.e_vcg)}}});
  out["k3_path_cond_mean"] = cond;
  out["mst_constants"] = to_json(ClosedForm{
      "mst_constants",
      {},
      {{"zeta3", mst.zeta3},
       {"two_zeta3", mst.two_zeta3},
       {"var_cstar_coeff", mst.var_cstar_coeff},
       {"var_vcg_coeff", mst.var_vcg_coeff}}});
  nlohmann::json beta = nlohmann::json::array();
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    beta.push_back({{"alpha", a}, {"ratio", beta_ratio(a)}});
  }
  out["beta_ratio"] = beta;
  return out;
}

}  // namespace vcg_lab
