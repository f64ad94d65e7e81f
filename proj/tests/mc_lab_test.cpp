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

#include "vcg_lab/mc_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "vcg_lab/errors.hpp"
#include "vcg_lab/oracles.hpp"

namespace vcg_lab {
namespace {

ExperimentTemplate uniform_template(System s) {
  return ExperimentTemplate(std::move(s), UniformDist{1.0});
}

RunOptions opts(std::uint64_t reps, std::uint64_t seed = 1, int threads = 1) {
  RunOptions o;
  o.reps = reps;
  o.seed = seed;
  o.threads = threads;
  return o;
}

TEST(McLabTest, TemplateChecksModelSize) {
  EXPECT_THROW(ExperimentTemplate(Matroid::uniform(3, 1),
                                  CostModel::iid(2, UniformDist{1.0})),
               DomainError);
}

TEST(McLabTest, RefusesBridgedSystems) {
  try {
    require_finite_vcg(Matroid::graphic(path_graph(4)));
    FAIL() << "expected a refusal";
  } catch (const BridgedMatroidError& e) {
    EXPECT_EQ(e.bridges(), (ItemSet{0, 1, 2}));
  }
  EXPECT_THROW(require_finite_vcg(StructureFamily(3, {{0, 1}, {0, 2}})),
               BridgedMatroidError);
  EXPECT_NO_THROW(require_finite_vcg(k3_path_family()));
  EXPECT_THROW(estimate(uniform_template(Matroid::uniform(3, 3)), opts(1000)),
               RefusalError);
}

TEST(McLabTest, EstimateNeedsEnoughReplications) {
  EXPECT_THROW(estimate(uniform_template(Matroid::uniform(3, 1)), opts(99)),
               DomainError);
}

// Identical reports for the serial kernel and 1 or 8 OpenMP workers.
TEST(McLabTest, ReproducibleAcrossThreadCounts) {
  const auto tmpl = uniform_template(Matroid::graphic(complete_graph(4)));
  RunOptions serial = opts(5000, 9);
  serial.serial = true;
  const std::string ref = to_json(estimate(tmpl, serial)).dump();
  for (int threads : {1, 8}) {
    RunOptions o = opts(5000, 9, threads);
    EXPECT_EQ(to_json(estimate(tmpl, o)).dump(), ref) << threads;
  }
  RunOptions other = opts(5000, 10);
  EXPECT_NE(to_json(estimate(tmpl, other)).dump(), ref);
}

TEST(McLabTest, FastPathAgreesWithGenericPath) {
  for (auto g : {complete_graph(4), complete_graph(6), cycle_graph(5)}) {
    const auto tmpl = uniform_template(Matroid::graphic(g));
    for (std::uint64_t r = 0; r < 200; ++r) {
      const auto a = simulate_one(tmpl, 3, r, false, false);
      const auto b = simulate_one(tmpl, 3, r, false, true);
      EXPECT_NEAR(a.cstar, b.cstar, 1e-12);
      EXPECT_NEAR(a.vcg, b.vcg, 1e-12);
      EXPECT_NEAR(a.sumsq, b.sumsq, 1e-12);
    }
  }
}

TEST(McLabTest, AuditModeFindsNoDeviation) {
  for (const Matroid& m :
       {Matroid::uniform(5, 2), Matroid::graphic(complete_graph(4))}) {
    RunOptions o = opts(500);
    o.audit = true;
    for (const auto& s : simulate(uniform_template(m), o)) {
      EXPECT_LT(s.audit_error, 1e-9);
    }
  }
}

TEST(McLabTest, SummarizeMatchesHandComputation) {
  std::vector<ReplicationSample> s(4);
  const double c[] = {0.1, 0.2, 0.3, 0.6};
  const double v[] = {0.3, 0.5, 0.4, 1.0};
  for (int i = 0; i < 4; ++i) {
    s[i].cstar = c[i];
    s[i].vcg = v[i];
    s[i].sumsq = c[i] * c[i];
  }
  const EstimateReport r = summarize(s, RunOptions{});
  EXPECT_NEAR(r.mean_cstar.value, 0.3, 1e-15);
  EXPECT_NEAR(r.mean_vcg.value, 0.55, 1e-15);
  EXPECT_NEAR(r.var_cstar.value, 0.14 / 3.0, 1e-15);
  EXPECT_NEAR(r.cov.value, (0.05 + 0.005 + 0.0 + 0.135) / 3.0, 1e-15);
  EXPECT_NEAR(r.ratio.value, 0.3 / 0.55, 1e-15);
  EXPECT_NEAR(r.mixed_moment[1].value,
              (0.03 + 0.1 + 0.12 + 0.6) / 4.0, 1e-15);
  EXPECT_NEAR(r.vcg_moment[2].value, (0.027 + 0.125 + 0.064 + 1.0) / 4.0,
              1e-15);
}

TEST(McLabTest, EstimateMatchesUniformMatroidOracle) {
  const auto r = estimate(uniform_template(Matroid::uniform(4, 2)),
                          opts(200000, 5));
  const auto s = uniform_matroid_uniform_stats(4, 2);
  EXPECT_LT(std::fabs(r.mean_cstar.value - to_double(s.e_cstar)),
            4 * r.mean_cstar.se);
  EXPECT_LT(std::fabs(r.mean_vcg.value - to_double(s.e_vcg)),
            4 * r.mean_vcg.se);
  EXPECT_LT(std::fabs(r.var_vcg.value - to_double(s.var_vcg)),
            4 * r.var_vcg.se);
  EXPECT_LT(std::fabs(r.var_diff.value - to_double(s.var_diff)),
            4 * r.var_diff.se);
  EXPECT_EQ(r.redraws, 0u);
}

TEST(McLabTest, VarianceIdentitiesPass) {
  const Ledger l = variance_identity_suite(
      uniform_template(Matroid::graphic(complete_graph(4))), opts(200000, 7));
  EXPECT_EQ(l.entries.size(), 7u);
  for (const auto& e : l.entries) {
    EXPECT_TRUE(e.pass) << e.name << " z=" << e.z;
  }
  EXPECT_THROW(variance_identity_suite(
                   ExperimentTemplate(Matroid::uniform(3, 1),
                                      ExponentialDist{1.0}),
                   opts(1000)),
               DomainError);
}

TEST(McLabTest, ZEntry) {
  const std::vector<double> diff = {0.1, -0.1, 0.2, -0.2};
  const LedgerEntry e = z_entry("x", 1.0, 1.0, diff, 3.0);
  EXPECT_TRUE(e.pass);
  EXPECT_EQ(e.z, 0.0);
  const LedgerEntry f = z_entry("y", 2.0, 1.0, diff, 3.0);
  EXPECT_FALSE(f.pass);
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  EXPECT_TRUE(z_entry("z", 0.5, 0.5, zero, 3.0).pass);
  EXPECT_FALSE(z_entry("w", 0.5, 0.6, zero, 3.0).pass);
  Ledger l;
  l.entries = {e, f};
  EXPECT_FALSE(l.all_pass());
  EXPECT_EQ(l.at("y").lhs, 2.0);
  EXPECT_THROW(l.at("nope"), DomainError);
}

TEST(McLabTest, ConditionalBinning) {
  std::vector<ReplicationSample> s;
  for (int i = 0; i < 100; ++i) {
    ReplicationSample r;
    r.vcg = (i % 2 == 0) ? 0.25 : 0.75;
    r.cstar = r.vcg / 2.0;
    s.push_back(r);
  }
  ReplicationSample edge;
  edge.vcg = 1.5;  // the last upper edge is inclusive
  edge.cstar = 0.75;
  s.push_back(edge);
  const ConditionalReport rep =
      conditional_from_samples(s, {0.0, 0.5, 1.0, 1.5}, 30);
  ASSERT_EQ(rep.bins.size(), 3u);
  EXPECT_EQ(rep.bins[0].count, 50u);
  EXPECT_EQ(rep.bins[1].count, 50u);
  EXPECT_EQ(rep.bins[2].count, 1u);
  EXPECT_FALSE(rep.bins[2].kept);
  EXPECT_EQ(rep.dropped_bins, (std::vector<std::size_t>{2}));
  EXPECT_NEAR(rep.bins[0].mean_cstar.value, 0.125, 1e-15);
  EXPECT_NEAR(rep.slope.value, 0.5, 1e-15);
  EXPECT_THROW(conditional_from_samples(s, {0.0, 0.5, 1.0}, 1000),
               StatisticsError);
  EXPECT_THROW(conditional_from_samples(s, {1.0, 0.0}, 1), DomainError);
}

TEST(McLabTest, ConditionalSlopeIsHalfOnMatroids) {
  for (const Matroid& m :
       {Matroid::uniform(5, 2), Matroid::graphic(complete_graph(3))}) {
    const ConditionalReport rep =
        conditional_law(uniform_template(m), opts(200000, 11), 20);
    EXPECT_LT(std::fabs(rep.slope.value - 0.5), 3.0 * rep.slope.se);
    for (const auto& b : rep.bins) {
      if (b.kept && b.count > 1000) {
        EXPECT_LT(std::fabs(b.mean_cstar.value - 0.5 * b.mean_vcg),
                  4.0 * b.mean_cstar.se + 1e-3)
            << b.lo;
      }
    }
  }
}

TEST(McLabTest, ConditionalUniformitySingleEdge) {
  const Matroid k3 = Matroid::graphic(complete_graph(3));
  const UniformityReport r = conditional_uniformity_test(
      k3, CostModel::iid(3, UniformDist{1.0}), {0.0, 0.4, 0.6}, {0}, 10000,
      13);
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_NEAR(r.items[0].threshold, 0.6, 1e-15);
  EXPECT_GT(r.items[0].p_value, 0.01);
  EXPECT_EQ(r.accepted, 10000u);
  EXPECT_TRUE(r.pass());
}

TEST(McLabTest, ConditionalUniformityFullBasis) {
  const Matroid u42 = Matroid::uniform(4, 2);
  const UniformityReport r = conditional_uniformity_test(
      u42, CostModel::iid(4, UniformDist{1.0}), {0.0, 0.0, 0.5, 0.7}, {0, 1},
      10000, 17);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_NEAR(r.items[0].threshold, 0.5, 1e-15);
  EXPECT_LT(std::fabs(r.pairs[0].z), 3.0);
  EXPECT_TRUE(r.pass());
}

TEST(McLabTest, ConditionalUniformityExponential) {
  const Matroid u31 = Matroid::uniform(3, 1);
  const UniformityReport r = conditional_uniformity_test(
      u31, CostModel::iid(3, ExponentialDist{1.0}), {0.0, 0.8, 1.5}, {0},
      10000, 19);
  EXPECT_TRUE(r.pass());
  EXPECT_LT(std::fabs(r.items[0].mean_cost.value -
                      conditional_mean_below(ExponentialDist{1.0}, 0.8)),
            4.0 * r.items[0].mean_cost.se);
}

TEST(McLabTest, ConditionalUniformityRefusals) {
  const Matroid u = Matroid::uniform(3, 1);
  const CostModel model = CostModel::iid(3, UniformDist{1.0});
  EXPECT_THROW(conditional_uniformity_test(u, model, {0.0, 1e-5, 0.5}, {0},
                                           1000, 1),
               RefusalError);
  EXPECT_THROW(conditional_uniformity_test(u, model, {0.0, 0.0, 0.5}, {0, 1},
                                           1000, 1),
               DomainError);
}

TEST(McLabTest, MonotoneSuites) {
  const ExperimentTemplate exp(Matroid::uniform(3, 1), ExponentialDist{1.0});
  const Ledger a = monotone_inequality_suite(exp, opts(200000, 23));
  EXPECT_TRUE(a.all_pass());
  const ExperimentTemplate beta(Matroid::graphic(complete_graph(3)),
                                BetaDist{2.0});
  const Ledger b = monotone_inequality_suite(beta, opts(200000, 29));
  EXPECT_TRUE(b.all_pass());
  EXPECT_NEAR(b.at("beta_mean_ratio").rhs / b.at("beta_mean_ratio").lhs, 1.0,
              0.02);
  const ExperimentTemplate path(k3_path_family(), BetaDist{2.0});
  EXPECT_TRUE(monotone_inequality_suite(path, opts(100000, 31)).all_pass());
  EXPECT_THROW(monotone_inequality_suite(
                   uniform_template(Matroid::uniform(3, 1)), opts(1000)),
               DomainError);
}

TEST(McLabTest, BridgeDerivativeClosedFormOnU31) {
  const std::vector<double> grid = {0.2, 0.5, 0.8};
  const auto points = ldiff_points(Matroid::uniform(3, 1), opts(200000, 37),
                                   grid);
  for (const auto& p : points) {
    const double exact = 3.0 * p.t * (1.0 - p.t) * (1.0 - p.t);
    EXPECT_LT(std::fabs(p.bridges.value - exact), 4.0 * p.bridges.se);
    EXPECT_LT(std::fabs(p.derivative.value - exact),
              4.0 * p.derivative.se + p.bias_bound);
  }
  EXPECT_TRUE(ldiff_check(Matroid::graphic(complete_graph(3)),
                          opts(100000, 41), grid)
                  .all_pass());
  EXPECT_THROW(ldiff_points(Matroid::uniform(3, 1), opts(100), {0.01}),
               DomainError);
  EXPECT_THROW(ldiff_points(Matroid::uniform(3, 1), opts(100), {0.99}),
               DomainError);
}

TEST(McLabTest, IdentityAudit) {
  RunOptions o = opts(300, 43);
  const AuditReport r =
      identity_audit(uniform_template(Matroid::uniform(6, 3)), o);
  EXPECT_TRUE(r.pass()) << r.first_violation;
  EXPECT_GT(r.checks, 300u * 20u);
  EXPECT_LT(r.max_relative_error, 1e-9);
  EXPECT_THROW(identity_audit(uniform_template(Matroid::graphic(path_graph(3))),
                              o),
               BridgedMatroidError);
  EXPECT_THROW(identity_audit(uniform_template(k3_path_family()), o),
               DomainError);
}

TEST(McLabTest, MstScalingPoint) {
  MstScalingOptions o;
  o.reps = 3000;
  o.seed = 47;
  const MstScalingRow row = mst_scaling_point(10, o);
  EXPECT_EQ(row.audited, 2u);
  EXPECT_LT(row.max_audit_error, 1e-9);
  EXPECT_LT(std::fabs(row.th2_gap.value), 4.0 * row.th2_gap.se);
  EXPECT_NEAR(row.mean_vcg.value / row.mean_cstar.value, 2.0, 0.1);
  EXPECT_THROW(mst_scaling_point(3, o), DomainError);
  o.max_n = 20;
  EXPECT_THROW(mst_scaling_point(21, o), RefusalError);
}

TEST(McLabTest, Serialization) {
  const auto samples = simulate(uniform_template(Matroid::uniform(4, 2)),
                                opts(1000));
  const EstimateReport r = summarize(samples, opts(1000));
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j["replications"], 1000);
  EXPECT_EQ(j["mixed_moments"].size(), 3u);
  EXPECT_EQ(to_csv(r).rfind("quantity,value,se\n", 0), 0u);
  const Ledger l = variance_identities(samples);
  EXPECT_EQ(to_json(l)["entries"].size(), l.entries.size());
  EXPECT_EQ(to_csv(l).rfind("name,lhs,rhs,se,z,pass\n", 0), 0u);
  MstScalingRow row;
  row.n = 5;
  EXPECT_EQ(to_csv(std::vector<MstScalingRow>{row})
                .rfind("n,mean_cstar,mean_vcg,n_var_vcg,n_var_cstar", 0),
            0u);
}

}  // namespace
}  // namespace vcg_lab
