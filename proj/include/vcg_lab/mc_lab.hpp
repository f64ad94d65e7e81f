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

#ifndef VCG_LAB_MC_LAB_HPP_
#define VCG_LAB_MC_LAB_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcg_lab/sampling.hpp"
#include "vcg_lab/stats.hpp"
#include "vcg_lab/vcg.hpp"

namespace vcg_lab {

// A system together with the cost model its replications are drawn from.
struct ExperimentTemplate {
  System system;
  CostModel model;

  ExperimentTemplate(System s, CostModel m);
  ExperimentTemplate(System s, const Distribution& iid);
};

// Per-replication quantities.
struct ReplicationSample {
  double cstar = 0.0;
  double vcg = 0.0;
  double sumsq = 0.0;  // sum of c(a)^2 over the minimum structure
  int redraws = 0;
  // Audit mode: largest relative deviation among the exact identities
  // (rank, bridge, threshold and square integrals) for this replication.
  double audit_error = 0.0;
};

struct RunOptions {
  std::uint64_t seed = 1;
  std::uint64_t reps = 1000;
  int threads = 1;
  // Check the exact integral identities on every replication (matroids).
  bool audit = false;
  // Use replacement-edge thresholds for graphic matroids.
  bool graphic_fast_path = false;
  // Run the serial reference kernel instead of the OpenMP one.
  bool serial = false;
};

// Throws BridgedMatroidError when some item has infinite threshold for every
// cost vector (ground-set bridges, or items in every structure of a family).
void require_finite_vcg(const System& system);

// One replication: sample costs for SeedSpec{seed, r} and run the auction.
ReplicationSample simulate_one(const ExperimentTemplate& tmpl,
                               std::uint64_t seed, std::uint64_t r,
                               bool audit = false,
                               bool graphic_fast_path = false);

// All replications, indexed by replication number.
std::vector<ReplicationSample> simulate(const ExperimentTemplate& tmpl,
                                        const RunOptions& options);

struct EstimateReport {
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  long long redraws = 0;
  double max_audit_error = 0.0;

  Estimate mean_cstar;
  Estimate mean_vcg;
  Estimate var_cstar;
  Estimate var_vcg;
  Estimate cov;
  Estimate var_diff;  // Var(C^VCG - 2 c*)
  Estimate sumsq_mean;
  // E[c* (C^VCG)^m] and E[(C^VCG)^(m+1)] for m = 0, 1, 2.
  std::array<Estimate, 3> mixed_moment;
  std::array<Estimate, 3> vcg_moment;
  // mean_cstar / mean_vcg, delta-method error.
  Estimate ratio;
};

EstimateReport summarize(const std::vector<ReplicationSample>& samples,
                         const RunOptions& options);

// Monte Carlo moments of c* and C^VCG. Needs reps >= 100.
EstimateReport estimate(const ExperimentTemplate& tmpl,
                        const RunOptions& options);

nlohmann::json to_json(const EstimateReport& report);
std::string to_csv(const EstimateReport& report);

// One checked identity: lhs and rhs, the standard error of lhs - rhs, the
// z-score and the verdict. `tolerance` is the absolute band used when the
// gate is not a plain z gate (0 otherwise).
struct LedgerEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};

struct Ledger {
  std::vector<LedgerEntry> entries;

  bool all_pass() const;
  const LedgerEntry& at(const std::string& name) const;
};

nlohmann::json to_json(const Ledger& ledger);
std::string to_csv(const Ledger& ledger);

// Two-sided gate |lhs - rhs| <= gate * se, where se is the standard error of
// the per-replication influence values `diff`.
LedgerEntry z_entry(std::string name, double lhs, double rhs,
                    std::span<const double> diff, double gate);

struct ConditionalBin {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
  Estimate mean_cstar;
  double mean_vcg = 0.0;
  bool kept = false;  // false when count < min_count
};

struct ConditionalReport {
  std::vector<double> bin_edges;
  std::vector<ConditionalBin> bins;
  std::vector<std::size_t> dropped_bins;
  // Through-origin regression of c* on C^VCG over all replications.
  Estimate slope;
  std::uint64_t replications = 0;
};

// Bins the replications by C^VCG at the given edges. Bins holding fewer than
// min_count samples are dropped and listed; if none survive a
// StatisticsError is thrown.
ConditionalReport conditional_from_samples(
    const std::vector<ReplicationSample>& samples,
    const std::vector<double>& edges, std::uint64_t min_count = 30);

// Equal-width bins over [0, max C^VCG]. The bin count is a method choice;
// the default is 20.
ConditionalReport conditional_law(const ExperimentTemplate& tmpl,
                                  const RunOptions& options, int bins = 20);
ConditionalReport conditional_law(const ExperimentTemplate& tmpl,
                                  const RunOptions& options,
                                  const std::vector<double>& edges);

nlohmann::json to_json(const ConditionalReport& report);
std::string to_csv(const ConditionalReport& report);

struct ItemUniformity {
  Item item = 0;
  double threshold = 0.0;  // v(F, a)
  double ks_statistic = 0.0;
  double p_value = 0.0;
  Estimate mean_cost;
};

struct PairIndependence {
  Item a = 0;
  Item b = 0;
  double correlation = 0.0;
  double z = 0.0;  // correlation * sqrt(n)
};

struct UniformityReport {
  std::vector<ItemUniformity> items;
  std::vector<PairIndependence> pairs;
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  double acceptance_rate = 0.0;

  // Every KS p-value above alpha and every |z| below z_gate.
  bool pass(double alpha = 0.01, double z_gate = 3.0) const;
};

// Costs outside F are held at `fixed_costs`; costs on F are redrawn from the
// model until `accepted` draws with F inside the minimum basis are collected.
// Each accepted c(a) is tested against the model's law conditioned on
// c(a) <= v(F, a) (probability integral transform + KS), and every pair of
// transforms against independence. Refuses when fewer than 1 in 1000 draws
// are accepted.
UniformityReport conditional_uniformity_test(
    const Matroid& matroid, const CostModel& model,
    const std::vector<double>& fixed_costs, const ItemSet& f,
    std::uint64_t accepted, std::uint64_t seed, int threads = 1);

nlohmann::json to_json(const UniformityReport& report);

// Uniform(0, 1) identities on a bridgeless matroid, each at 4 s.e.:
// Cov = Var(V)/2; Var(V) = 4 Var(c*) - Var(V - 2c*); Var(V - 2c*) =
// E sum c(a)^2; Var(c*) = Var(V)/4 + E sum c(a)^2 / 4; and
// E[c* V^m] = E[V^(m+1)] / 2 for m = 0, 1, 2.
Ledger variance_identities(const std::vector<ReplicationSample>& samples,
                           double gate = 4.0);
Ledger variance_identity_suite(const ExperimentTemplate& tmpl,
                               const RunOptions& options);

// Exponential costs: E c* < E V / 2 with one-sided z >= 3 (and, on a
// bridgeless matroid, the conditional slope below 1/2). Beta(alpha, 1):
// E c* = alpha/(alpha+1) E V and conditional slope alpha/(alpha+1), both
// within 3 s.e., on bridgeless matroids; the inequality elsewhere.
Ledger monotone_inequality_suite(const ExperimentTemplate& tmpl,
                                 const RunOptions& options);
Ledger monotone_inequalities(const ExperimentTemplate& tmpl,
                             const std::vector<ReplicationSample>& samples);

// E beta(A(t)) against t d/dt E rk(A(t)) (central difference with step h)
// for i.i.d. U(0, 1) costs. The band is 4 s.e. plus the bound
// t h^2 N(N-1)(N-2) / 3 on the difference error, N = ground size.
Ledger ldiff_check(const Matroid& matroid, const RunOptions& options,
                   const std::vector<double>& grid, double h = 0.02);

// Per-t sample means, exposed for closed-form comparisons.
struct LdiffPoint {
  double t = 0.0;
  Estimate bridges;     // E beta(A(t))
  Estimate derivative;  // t (E rk(A(t+h)) - E rk(A(t-h))) / 2h
  double diff_se = 0.0;  // paired s.e. of bridges - derivative
  double bias_bound = 0.0;
};
std::vector<LdiffPoint> ldiff_points(const Matroid& matroid,
                                     const RunOptions& options,
                                     const std::vector<double>& grid,
                                     double h = 0.02);

// Minimum spanning tree of K_n with i.i.d. U(0, 1) edge costs.
// Exact per-sample checks on sampled matroid instances: the four integral
// identities, the selection rule, and v(F, a) = threshold(a) for every
// F within the minimum basis (when the basis has at most max_extended items).
struct AuditReport {
  std::uint64_t replications = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double max_relative_error = 0.0;
  std::string first_violation;
  bool pass() const { return violations == 0; }
};

AuditReport identity_audit(const ExperimentTemplate& tmpl,
                           const RunOptions& options, double tolerance = 1e-9,
                           int max_extended = 8);
nlohmann::json to_json(const AuditReport& report);

struct MstScalingRow {
  int n = 0;
  std::uint64_t replications = 0;
  Estimate mean_cstar;
  Estimate mean_vcg;
  Estimate n_var_vcg;
  Estimate n_var_cstar;
  Estimate th2_gap;  // E C^VCG - 2 E c*
  std::uint64_t audited = 0;
  double max_audit_error = 0.0;
};

struct MstScalingOptions {
  std::uint64_t seed = 1;
  std::uint64_t reps = 10000;
  int threads = 1;
  // Replications re-checked against the generic two-greedy thresholds (and,
  // for small graphs, the bridge integral).
  std::uint64_t audit_reps = 2;
  int max_n = 400;
};

MstScalingRow mst_scaling_point(int n, const MstScalingOptions& options);
nlohmann::json to_json(const MstScalingRow& row);
std::string to_csv(const std::vector<MstScalingRow>& rows);

}  // namespace vcg_lab

#endif  // VCG_LAB_MC_LAB_HPP_
