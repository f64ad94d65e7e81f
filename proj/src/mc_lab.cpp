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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "vcg_lab/errors.hpp"
#include "vcg_lab/rank_integrals.hpp"
#include "vcg_lab/replicate.hpp"

namespace vcg_lab {

namespace {

double relative_error(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-12});
  return std::fabs(a - b) / scale;
}

template <typename Fn>
std::vector<double> column(const std::vector<ReplicationSample>& samples,
                           Fn&& fn) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(fn(s));
  return out;
}

std::vector<double> centred(std::span<const double> x) {
  const double m = mean_estimate(x).value;
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= m;
  return out;
}

// Max relative deviation of the integral identities on one matroid instance.
double audit_instance(const Instance& instance, const AuctionEvaluator& eval,
                      double cstar, double vcg, double sumsq) {
  const Matroid& m = *instance.matroid();
  const RankProfile profile = rank_profile(instance);
  double worst = 0.0;
  worst = std::max(worst, relative_error(
                              cost_via_rank_integral(profile, m.full_rank()),
                              cstar));
  worst = std::max(worst,
                   relative_error(vcg_via_bridge_integral(profile, cstar), vcg));
  worst = std::max(worst, relative_error(
                              sumsq_via_integral(profile, m.full_rank()), sumsq));
  for (Item a = 0; a < instance.ground_size(); ++a) {
    const MaybeCost direct = eval.threshold(a);
    worst = std::max(worst, relative_error(threshold_via_integral(instance, a),
                                           direct.value()));
  }
  return worst;
}

}  // namespace

ExperimentTemplate::ExperimentTemplate(System s, CostModel m)
    : system(std::move(s)), model(std::move(m)) {
  if (model.size() != ground_size(system)) {
    throw DomainError("cost model size does not match the ground set");
  }
}

ExperimentTemplate::ExperimentTemplate(System s, const Distribution& iid)
    : ExperimentTemplate(s, CostModel::iid(ground_size(s), iid)) {}

void require_finite_vcg(const System& system) {
  ItemSet stuck;
  if (const Matroid* m = std::get_if<Matroid>(&system)) {
    stuck = ground_bridges(*m);
  } else {
    const auto& family = std::get<StructureFamily>(system);
    for (Item a = 0; a < family.ground_size(); ++a) {
      const bool everywhere = std::all_of(
          family.structures().begin(), family.structures().end(),
          [a](const ItemSet& s) {
            return std::binary_search(s.begin(), s.end(), a);
          });
      if (everywhere) stuck.push_back(a);
    }
  }
  if (!stuck.empty()) throw BridgedMatroidError(std::move(stuck));
}

ReplicationSample simulate_one(const ExperimentTemplate& tmpl,
                               std::uint64_t seed, std::uint64_t r, bool audit,
                               bool graphic_fast_path) {
  ReplicationSample out;
  std::vector<double> costs(tmpl.model.size());
  out.redraws = sample_costs_into(tmpl.model, {seed, r}, costs);
  const Instance instance(tmpl.system, costs);
  const Matroid* m = instance.matroid();

  if (graphic_fast_path && m != nullptr && m->graphic_spec() != nullptr) {
    const TreeThresholds fast =
        graphic_tree_thresholds(*m->graphic_spec(), costs);
    out.cstar = fast.nominal_cost;
    out.vcg = fast.vcg_total.value();
    out.sumsq = sum_of_squares(costs, fast.tree);
  } else {
    const AuctionEvaluator eval(instance);
    const ItemSet s = eval.min_structure();
    out.cstar = eval.min_cost().value();
    for (Item a : s) out.vcg += eval.threshold(a).value();
    out.sumsq = sum_of_squares(costs, s);
  }
  if (audit && m != nullptr) {
    out.audit_error = audit_instance(instance, AuctionEvaluator(instance),
                                     out.cstar, out.vcg, out.sumsq);
  }
  return out;
}

std::vector<ReplicationSample> simulate(const ExperimentTemplate& tmpl,
                                        const RunOptions& options) {
  require_finite_vcg(tmpl.system);
  auto one = [&](std::uint64_t r) {
    return simulate_one(tmpl, options.seed, r, options.audit,
                        options.graphic_fast_path);
  };
  if (options.serial) {
    return replicate_serial<ReplicationSample>(options.reps, one);
  }
  return replicate_parallel<ReplicationSample>(options.reps, options.threads,
                                               one);
}

// ---------------------------------------------------------------------------
// Estimates

EstimateReport summarize(const std::vector<ReplicationSample>& samples,
                         const RunOptions& options) {
  if (samples.size() < 2) throw StatisticsError("need >= 2 replications");
  EstimateReport rep;
  rep.replications = samples.size();
  rep.seed = options.seed;
  rep.threads = options.serial ? 1 : options.threads;
  for (const auto& s : samples) {
    rep.redraws += s.redraws;
    rep.max_audit_error = std::max(rep.max_audit_error, s.audit_error);
  }
  const auto c = column(samples, [](const auto& s) { return s.cstar; });
  const auto v = column(samples, [](const auto& s) { return s.vcg; });
  const auto q = column(samples, [](const auto& s) { return s.sumsq; });
  const auto d =
      column(samples, [](const auto& s) { return s.vcg - 2.0 * s.cstar; });

  rep.mean_cstar = mean_estimate(c);
  rep.mean_vcg = mean_estimate(v);
  rep.var_cstar = variance_estimate(c);
  rep.var_vcg = variance_estimate(v);
  rep.cov = covariance_estimate(c, v);
  rep.var_diff = variance_estimate(d);
  rep.sumsq_mean = mean_estimate(q);
  for (int m = 0; m < 3; ++m) {
    std::vector<double> mixed(samples.size());
    std::vector<double> power(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double vm = std::pow(v[i], m);
      mixed[i] = c[i] * vm;
      power[i] = v[i] * vm;
    }
    rep.mixed_moment[m] = mean_estimate(mixed);
    rep.vcg_moment[m] = mean_estimate(power);
  }
  const double ratio = rep.mean_cstar.value / rep.mean_vcg.value;
  std::vector<double> lin(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) lin[i] = c[i] - ratio * v[i];
  rep.ratio = {ratio, mean_estimate(lin).se / rep.mean_vcg.value};
  return rep;
}

EstimateReport estimate(const ExperimentTemplate& tmpl,
                        const RunOptions& options) {
  if (options.reps < 100) throw DomainError("estimate needs reps >= 100");
  return summarize(simulate(tmpl, options), options);
}

nlohmann::json to_json(const EstimateReport& r) {
  nlohmann::json mixed = nlohmann::json::array();
  for (int m = 0; m < 3; ++m) {
    mixed.push_back({{"m", m},
                     {"E_cstar_vcg_pow_m", to_json(r.mixed_moment[m])},
                     {"E_vcg_pow_m_plus_1", to_json(r.vcg_moment[m])}});
  }
  return {{"replications", r.replications},
          {"seed", r.seed},
          {"redraws", r.redraws},
          {"max_audit_error", r.max_audit_error},
          {"mean_cstar", to_json(r.mean_cstar)},
          {"mean_vcg", to_json(r.mean_vcg)},
          {"var_cstar", to_json(r.var_cstar)},
          {"var_vcg", to_json(r.var_vcg)},
          {"cov", to_json(r.cov)},
          {"var_diff", to_json(r.var_diff)},
          {"sumsq_mean", to_json(r.sumsq_mean)},
          {"ratio", to_json(r.ratio)},
          {"mixed_moments", mixed}};
}

std::string to_csv(const EstimateReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "quantity,value,se\n";
  auto row = [&](const std::string& name, const Estimate& e) {
    out << name << ',' << e.value << ',' << e.se << '\n';
  };
  row("mean_cstar", r.mean_cstar);
  row("mean_vcg", r.mean_vcg);
  row("var_cstar", r.var_cstar);
  row("var_vcg", r.var_vcg);
  row("cov", r.cov);
  row("var_diff", r.var_diff);
  row("sumsq_mean", r.sumsq_mean);
  row("ratio", r.ratio);
  for (int m = 0; m < 3; ++m) {
    row("E_cstar_vcg_pow_" + std::to_string(m), r.mixed_moment[m]);
    row("E_vcg_pow_" + std::to_string(m + 1), r.vcg_moment[m]);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Ledger

bool Ledger::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const LedgerEntry& e) { return e.pass; });
}

const LedgerEntry& Ledger::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw DomainError("no ledger entry named '" + name + "'");
}

nlohmann::json to_json(const Ledger& ledger) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : ledger.entries) {
    rows.push_back({{"name", e.name},
                    {"lhs", e.lhs},
                    {"rhs", e.rhs},
                    {"se", e.se},
                    {"z", e.z},
                    {"tolerance", e.tolerance},
                    {"pass", e.pass}});
  }
  return {{"entries", rows}, {"all_pass", ledger.all_pass()}};
}

std::string to_csv(const Ledger& ledger) {
  std::ostringstream out;
  out.precision(17);
  out << "name,lhs,rhs,se,z,pass\n";
  for (const auto& e : ledger.entries) {
    out << e.name << ',' << e.lhs << ',' << e.rhs << ',' << e.se << ','
        << e.z << ',' << (e.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

LedgerEntry z_entry(std::string name, double lhs, double rhs,
                    std::span<const double> diff, double gate) {
  LedgerEntry e;
  e.name = std::move(name);
  e.lhs = lhs;
  e.rhs = rhs;
  e.se = mean_estimate(diff).se;
  if (e.se > 0.0) {
    e.z = (lhs - rhs) / e.se;
    e.pass = std::fabs(e.z) <= gate;
  } else {
    e.pass = relative_error(lhs, rhs) <= 1e-12;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Conditional law

ConditionalReport conditional_from_samples(
    const std::vector<ReplicationSample>& samples,
    const std::vector<double>& edges, std::uint64_t min_count) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw DomainError("bin edges must be ascending with at least two entries");
  }
  ConditionalReport rep;
  rep.bin_edges = edges;
  rep.replications = samples.size();
  const std::size_t nbins = edges.size() - 1;
  std::vector<std::vector<double>> cstar(nbins);
  std::vector<double> vsum(nbins, 0.0);
  for (const auto& s : samples) {
    if (s.vcg < edges.front() || s.vcg > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), s.vcg);
    std::size_t b = static_cast<std::size_t>(it - edges.begin());
    b = std::min(b == 0 ? 0 : b - 1, nbins - 1);
    cstar[b].push_back(s.cstar);
    vsum[b] += s.vcg;
  }
  for (std::size_t b = 0; b < nbins; ++b) {
    ConditionalBin bin;
    bin.lo = edges[b];
    bin.hi = edges[b + 1];
    bin.count = cstar[b].size();
    bin.kept = bin.count >= std::max<std::uint64_t>(min_count, 2);
    if (bin.kept) {
      bin.mean_cstar = mean_estimate(cstar[b]);
      bin.mean_vcg = vsum[b] / static_cast<double>(bin.count);
    } else {
      rep.dropped_bins.push_back(b);
    }
    rep.bins.push_back(bin);
  }
  if (rep.dropped_bins.size() == nbins) {
    throw StatisticsError("every conditional bin holds fewer than " +
                          std::to_string(min_count) + " samples");
  }
  const auto c = column(samples, [](const auto& s) { return s.cstar; });
  const auto v = column(samples, [](const auto& s) { return s.vcg; });
  rep.slope = origin_slope(v, c);
  return rep;
}

ConditionalReport conditional_law(const ExperimentTemplate& tmpl,
                                  const RunOptions& options, int bins) {
  if (bins < 1) throw DomainError("need at least one bin");
  const auto samples = simulate(tmpl, options);
  double vmax = 0.0;
  for (const auto& s : samples) vmax = std::max(vmax, s.vcg);
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = vmax * i / bins;
  return conditional_from_samples(samples, edges);
}

ConditionalReport conditional_law(const ExperimentTemplate& tmpl,
                                  const RunOptions& options,
                                  const std::vector<double>& edges) {
  return conditional_from_samples(simulate(tmpl, options), edges);
}

nlohmann::json to_json(const ConditionalReport& r) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : r.bins) {
    nlohmann::json row = {{"lo", b.lo},
                          {"hi", b.hi},
                          {"count", b.count},
                          {"kept", b.kept}};
    if (b.kept) {
      row["mean_cstar"] = to_json(b.mean_cstar);
      row["mean_vcg"] = b.mean_vcg;
    }
    bins.push_back(row);
  }
  return {{"replications", r.replications},
          {"bin_edges", r.bin_edges},
          {"bins", bins},
          {"dropped_bins", r.dropped_bins},
          {"slope", to_json(r.slope)}};
}

std::string to_csv(const ConditionalReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "lo,hi,count,mean_vcg,mean_cstar,se\n";
  for (const auto& b : r.bins) {
    if (!b.kept) continue;
    out << b.lo << ',' << b.hi << ',' << b.count << ',' << b.mean_vcg << ','
        << b.mean_cstar.value << ',' << b.mean_cstar.se << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Conditional uniformity

bool UniformityReport::pass(double alpha, double z_gate) const {
  for (const auto& i : items) {
    if (!(i.p_value > alpha)) return false;
  }
  for (const auto& p : pairs) {
    if (!(std::fabs(p.z) < z_gate)) return false;
  }
  return true;
}

UniformityReport conditional_uniformity_test(
    const Matroid& matroid, const CostModel& model,
    const std::vector<double>& fixed_costs, const ItemSet& f,
    std::uint64_t accepted, std::uint64_t seed, int threads) {
  if (model.size() != matroid.ground_size()) {
    throw DomainError("cost model size does not match the ground set");
  }
  if (f.empty()) throw DomainError("F must be non-empty");
  if (matroid.rank(f) != static_cast<int>(f.size())) {
    throw DomainError("F must be independent");
  }
  if (accepted < 3) throw DomainError("need at least 3 accepted samples");

  std::vector<double> base = fixed_costs;
  for (Item a : f) base.at(a) = 0.0;
  const Instance probe(matroid, base);
  const AuctionEvaluator probe_eval(probe);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const MaybeCost t = probe_eval.extended_threshold(f, f[i]);
    if (!t) throw DomainError("F contains a bridge; its threshold is infinite");
    v[i] = *t;
  }

  // One attempt: redraw costs on F; report them if F lies in the greedy basis.
  struct Attempt {
    bool ok = false;
    std::vector<double> draws;
  };
  auto attempt = [&](std::uint64_t index) {
    Attempt out;
    Rng rng = make_rng({seed, index});
    std::vector<double> costs = base;
    out.draws.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      out.draws[i] = draw(model.at(f[i]), rng);
      costs[f[i]] = out.draws[i];
    }
    const auto basis = greedy_min_basis(matroid, costs).basis;
    out.ok = std::all_of(f.begin(), f.end(), [&](Item a) {
      return std::find(basis.begin(), basis.end(), a) != basis.end();
    });
    return out;
  };

  UniformityReport rep;
  std::vector<std::vector<double>> kept;
  constexpr std::uint64_t kPilot = 10000;
  const std::uint64_t max_attempts = std::max<std::uint64_t>(accepted, 1) * 1000;
  std::uint64_t next = 0;
  while (kept.size() < accepted) {
    std::uint64_t block = kPilot;
    if (next > 0) {
      const double rate =
          std::max(1e-3, static_cast<double>(kept.size()) / next);
      const double need = static_cast<double>(accepted - kept.size()) / rate;
      block = std::max<std::uint64_t>(kPilot,
                                      static_cast<std::uint64_t>(1.1 * need));
    }
    auto results = replicate_parallel<Attempt>(
        block, threads, [&](std::uint64_t i) { return attempt(next + i); });
    for (std::uint64_t i = 0; i < block && kept.size() < accepted; ++i) {
      rep.attempts = next + i + 1;
      if (results[i].ok) kept.push_back(std::move(results[i].draws));
    }
    next += block;
    const double rate = static_cast<double>(kept.size()) / rep.attempts;
    if (rate < 1e-3) {
      std::ostringstream msg;
      msg << "acceptance rate " << rate << " below 1e-3 after "
          << rep.attempts << " attempts; F is rarely inside the minimum basis";
      throw RefusalError(msg.str());
    }
    if (next > max_attempts) throw RefusalError("attempt budget exhausted");
  }
  rep.accepted = kept.size();
  rep.acceptance_rate = static_cast<double>(rep.accepted) / rep.attempts;

  std::vector<std::vector<double>> pit(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Distribution& dist = model.at(f[i]);
    const double top = cdf(dist, v[i]);
    std::vector<double> raw;
    raw.reserve(kept.size());
    for (const auto& k : kept) {
      raw.push_back(k[i]);
      pit[i].push_back(cdf(dist, k[i]) / top);
    }
    ItemUniformity u;
    u.item = f[i];
    u.threshold = v[i];
    u.ks_statistic = ks_statistic(pit[i], [](double x) {
      return std::clamp(x, 0.0, 1.0);
    });
    u.p_value = kolmogorov_pvalue(u.ks_statistic, pit[i].size());
    u.mean_cost = mean_estimate(raw);
    rep.items.push_back(u);
  }
  const double root_n = std::sqrt(static_cast<double>(rep.accepted));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      PairIndependence p;
      p.a = f[i];
      p.b = f[j];
      p.correlation = pearson_correlation(pit[i], pit[j]);
      p.z = p.correlation * root_n;
      rep.pairs.push_back(p);
    }
  }
  return rep;
}

nlohmann::json to_json(const UniformityReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : r.items) {
    items.push_back({{"item", i.item},
                     {"threshold", i.threshold},
                     {"ks_statistic", i.ks_statistic},
                     {"p_value", i.p_value},
                     {"mean_cost", to_json(i.mean_cost)}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"correlation", p.correlation},
                     {"z", p.z}});
  }
  return {{"items", items},
          {"pairs", pairs},
          {"accepted", r.accepted},
          {"attempts", r.attempts},
          {"acceptance_rate", r.acceptance_rate}};
}

// ---------------------------------------------------------------------------
// Variance identities

Ledger variance_identities(const std::vector<ReplicationSample>& samples,
                           double gate) {
  const auto c = column(samples, [](const auto& s) { return s.cstar; });
  const auto v = column(samples, [](const auto& s) { return s.vcg; });
  const auto q = column(samples, [](const auto& s) { return s.sumsq; });
  const auto d =
      column(samples, [](const auto& s) { return s.vcg - 2.0 * s.cstar; });
  const auto cc = centred(c);
  const auto vc = centred(v);
  const auto dc = centred(d);
  const std::size_t n = samples.size();

  const double var_c = sample_variance(c);
  const double var_v = sample_variance(v);
  const double var_d = sample_variance(d);
  const double cov = covariance_estimate(c, v).value;
  const double q_mean = mean_estimate(q).value;

  Ledger ledger;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = cc[i] * vc[i] - 0.5 * vc[i] * vc[i];
  ledger.entries.push_back(z_entry("cov_half_var_vcg", cov, 0.5 * var_v, z, gate));

  for (std::size_t i = 0; i < n; ++i) {
    z[i] = vc[i] * vc[i] - 4.0 * cc[i] * cc[i] + dc[i] * dc[i];
  }
  ledger.entries.push_back(
      z_entry("var_vcg_4var_cstar_minus_var_diff", var_v, 4.0 * var_c - var_d,
              z, gate));

  for (std::size_t i = 0; i < n; ++i) z[i] = dc[i] * dc[i] - q[i];
  ledger.entries.push_back(
      z_entry("var_diff_equals_sumsq_mean", var_d, q_mean, z, gate));

  for (std::size_t i = 0; i < n; ++i) {
    z[i] = cc[i] * cc[i] - 0.25 * vc[i] * vc[i] - 0.25 * q[i];
  }
  ledger.entries.push_back(z_entry("var_cstar_quarter_var_vcg_quarter_sumsq",
                                   var_c, 0.25 * var_v + 0.25 * q_mean, z,
                                   gate));

  for (int m = 0; m < 3; ++m) {
    std::vector<double> lhs(n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double vm = std::pow(v[i], m);
      lhs[i] = c[i] * vm;
      rhs[i] = 0.5 * v[i] * vm;
      z[i] = lhs[i] - rhs[i];
    }
    ledger.entries.push_back(z_entry("mixed_moment_m" + std::to_string(m),
                                     mean_estimate(lhs).value,
                                     mean_estimate(rhs).value, z, gate));
  }
  return ledger;
}

Ledger variance_identity_suite(const ExperimentTemplate& tmpl,
                               const RunOptions& options) {
  if (std::get_if<Matroid>(&tmpl.system) == nullptr) {
    throw DomainError("variance identities need a matroid");
  }
  for (const auto& d : tmpl.model.per_item()) {
    const auto* u = std::get_if<UniformDist>(&d);
    if (u == nullptr || u->d != 1.0) {
      throw DomainError("variance identities need i.i.d. U(0, 1) costs");
    }
  }
  return variance_identities(simulate(tmpl, options));
}

// ---------------------------------------------------------------------------
// Monotone inequalities

Ledger monotone_inequalities(const ExperimentTemplate& tmpl,
                             const std::vector<ReplicationSample>& samples) {
  if (!tmpl.model.is_iid() || tmpl.model.size() == 0) {
    throw DomainError("monotone suite needs i.i.d. costs");
  }
  const Distribution& dist = tmpl.model.at(0);
  const bool matroid = std::get_if<Matroid>(&tmpl.system) != nullptr;
  const auto c = column(samples, [](const auto& s) { return s.cstar; });
  const auto v = column(samples, [](const auto& s) { return s.vcg; });
  const double c_mean = mean_estimate(c).value;
  const double v_mean = mean_estimate(v).value;

  auto linear = [&](double ratio) {
    std::vector<double> z(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) z[i] = c[i] - ratio * v[i];
    return z;
  };

  Ledger ledger;
  if (std::holds_alternative<ExponentialDist>(dist)) {
    const auto diff = linear(0.5);
    LedgerEntry e = z_entry("exp_mean_cstar_below_half_vcg", c_mean,
                            0.5 * v_mean, diff, 0.0);
    e.pass = e.z <= -3.0;
    ledger.entries.push_back(e);
    if (matroid) {
      const Estimate slope = origin_slope(v, c);
      LedgerEntry s{"exp_conditional_slope_below_half", slope.value, 0.5,
                    slope.se, (slope.value - 0.5) / slope.se, false, 0.0};
      s.pass = s.z <= -3.0;
      ledger.entries.push_back(s);
    }
    return ledger;
  }
  const auto* beta = std::get_if<BetaDist>(&dist);
  if (beta == nullptr) {
    throw DomainError("monotone suite needs exponential or Beta(alpha, 1) costs");
  }
  const double ratio = beta->alpha / (beta->alpha + 1.0);
  const auto diff = linear(ratio);
  if (matroid) {
    ledger.entries.push_back(
        z_entry("beta_mean_ratio", c_mean, ratio * v_mean, diff, 3.0));
    const Estimate slope = origin_slope(v, c);
    const double z = (slope.value - ratio) / slope.se;
    ledger.entries.push_back({"beta_conditional_slope", slope.value, ratio,
                              slope.se, z, std::fabs(z) <= 3.0, 0.0});
  } else {
    LedgerEntry e =
        z_entry("beta_mean_inequality", c_mean, ratio * v_mean, diff, 0.0);
    e.pass = e.z <= 3.0;
    ledger.entries.push_back(e);
  }
  return ledger;
}

Ledger monotone_inequality_suite(const ExperimentTemplate& tmpl,
                                 const RunOptions& options) {
  return monotone_inequalities(tmpl, simulate(tmpl, options));
}

// ---------------------------------------------------------------------------
// Lemma-style derivative check

std::vector<LdiffPoint> ldiff_points(const Matroid& matroid,
                                     const RunOptions& options,
                                     const std::vector<double>& grid,
                                     double h) {
  if (!(h > 0.0)) throw DomainError("step h must be positive");
  if (grid.empty()) throw DomainError("empty t grid");
  for (double t : grid) {
    if (!(t - h > 0.0 && t + h < 1.0)) {
      throw DomainError("t grid must stay inside (0, 1) including t +- h");
    }
  }
  if (options.reps < 2) throw DomainError("need >= 2 replications");
  const std::size_t g = grid.size();
  const int n = matroid.ground_size();
  const CostModel model = CostModel::iid(n, UniformDist{1.0});

  // Per replication and grid point: beta(A(t)) and rk(A(t+h)) - rk(A(t-h)).
  auto one = [&](std::uint64_t r) {
    std::vector<double> costs(n);
    sample_costs_into(model, {options.seed, r}, costs);
    std::vector<int> out(2 * g);
    ItemSet below;
    ItemSet lo;
    ItemSet hi;
    for (std::size_t k = 0; k < g; ++k) {
      const double t = grid[k];
      below.clear();
      lo.clear();
      hi.clear();
      for (Item a = 0; a < n; ++a) {
        if (costs[a] <= t) below.push_back(a);
        if (costs[a] <= t - h) lo.push_back(a);
        if (costs[a] <= t + h) hi.push_back(a);
      }
      out[2 * k] = static_cast<int>(bridges(matroid, below).size());
      out[2 * k + 1] = matroid.rank(hi) - matroid.rank(lo);
    }
    return out;
  };
  const auto rows =
      options.serial
          ? replicate_serial<std::vector<int>>(options.reps, one)
          : replicate_parallel<std::vector<int>>(options.reps, options.threads,
                                                 one);

  // Integer sums are exact, so the reduction is order independent.
  std::vector<long long> sb(g, 0), sbb(g, 0), sd(g, 0), sdd(g, 0), sbd(g, 0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < g; ++k) {
      const long long b = row[2 * k];
      const long long d = row[2 * k + 1];
      sb[k] += b;
      sbb[k] += b * b;
      sd[k] += d;
      sdd[k] += d * d;
      sbd[k] += b * d;
    }
  }
  const double reps = static_cast<double>(options.reps);
  const double big_n = n;
  std::vector<LdiffPoint> points;
  for (std::size_t k = 0; k < g; ++k) {
    const double t = grid[k];
    const double scale = t / (2.0 * h);
    const double mb = sb[k] / reps;
    const double md = sd[k] / reps;
    const double vb = (sbb[k] - reps * mb * mb) / (reps - 1.0);
    const double vd = (sdd[k] - reps * md * md) / (reps - 1.0);
    const double cbd = (sbd[k] - reps * mb * md) / (reps - 1.0);
    LdiffPoint p;
    p.t = t;
    p.bridges = {mb, std::sqrt(std::max(vb, 0.0) / reps)};
    p.derivative = {scale * md, scale * std::sqrt(std::max(vd, 0.0) / reps)};
    const double vdiff = vb + scale * scale * vd - 2.0 * scale * cbd;
    p.diff_se = std::sqrt(std::max(vdiff, 0.0) / reps);
    p.bias_bound = t * h * h * big_n * (big_n - 1.0) * (big_n - 2.0) / 3.0;
    points.push_back(p);
  }
  return points;
}

Ledger ldiff_check(const Matroid& matroid, const RunOptions& options,
                   const std::vector<double>& grid, double h) {
  Ledger ledger;
  for (const LdiffPoint& p : ldiff_points(matroid, options, grid, h)) {
    std::ostringstream name;
    name << "ldiff_t" << p.t;
    LedgerEntry e;
    e.name = name.str();
    e.lhs = p.bridges.value;
    e.rhs = p.derivative.value;
    e.se = p.diff_se;
    e.z = e.se > 0.0 ? (e.lhs - e.rhs) / e.se : 0.0;
    e.tolerance = 4.0 * e.se + p.bias_bound;
    e.pass = std::fabs(e.lhs - e.rhs) <= e.tolerance;
    ledger.entries.push_back(e);
  }
  return ledger;
}

// ---------------------------------------------------------------------------
// Identity audit

namespace {

struct AuditOne {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst = 0.0;
  std::string first;
};

void record(AuditOne& out, double err, double tolerance,
            const std::string& what, std::uint64_t r) {
  ++out.checks;
  out.worst = std::max(out.worst, err);
  if (!(err <= tolerance)) {
    if (out.violations++ == 0) {
      std::ostringstream msg;
      msg << what << " at replication " << r << " (relative error " << err
          << ")";
      out.first = msg.str();
    }
  }
}

}  // namespace

AuditReport identity_audit(const ExperimentTemplate& tmpl,
                           const RunOptions& options, double tolerance,
                           int max_extended) {
  if (std::get_if<Matroid>(&tmpl.system) == nullptr) {
    throw DomainError("the identity audit needs a matroid system");
  }
  require_finite_vcg(tmpl.system);

  auto one = [&](std::uint64_t r) {
    AuditOne out;
    std::vector<double> costs(tmpl.model.size());
    sample_costs_into(tmpl.model, {options.seed, r}, costs);
    const Instance instance(tmpl.system, costs);
    const Matroid& m = *instance.matroid();
    const AuctionEvaluator eval(instance);
    const ItemSet s = eval.min_structure();
    const double cstar = eval.min_cost().value();
    std::vector<double> thr(m.ground_size());
    double vcg = 0.0;
    for (Item a = 0; a < m.ground_size(); ++a) {
      thr[a] = eval.threshold(a).value();
      const bool selected = std::binary_search(s.begin(), s.end(), a);
      if (selected) vcg += thr[a];
      record(out, selected == (costs[a] < thr[a]) ? 0.0 : 1.0, tolerance,
             "selection rule for item " + std::to_string(a), r);
    }
    const RankProfile profile = rank_profile(instance);
    record(out,
           relative_error(cost_via_rank_integral(profile, m.full_rank()), cstar),
           tolerance, "rank integral", r);
    record(out, relative_error(vcg_via_bridge_integral(profile, cstar), vcg),
           tolerance, "bridge integral", r);
    record(out,
           relative_error(sumsq_via_integral(profile, m.full_rank()),
                          sum_of_squares(costs, s)),
           tolerance, "sum-of-squares integral", r);
    for (Item a = 0; a < m.ground_size(); ++a) {
      record(out, relative_error(threshold_via_integral(instance, a), thr[a]),
             tolerance, "threshold integral for item " + std::to_string(a), r);
    }
    if (static_cast<int>(s.size()) <= max_extended) {
      const std::uint32_t subsets = 1u << s.size();
      ItemSet f;
      for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        f.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (mask & (1u << i)) f.push_back(s[i]);
        }
        for (Item a : f) {
          const double v = eval.extended_threshold(f, a).value();
          record(out, relative_error(v, thr[a]), tolerance,
                 "extended threshold for item " + std::to_string(a), r);
        }
      }
    }
    return out;
  };
  const auto rows =
      options.serial
          ? replicate_serial<AuditOne>(options.reps, one)
          : replicate_parallel<AuditOne>(options.reps, options.threads, one);
  AuditReport rep;
  rep.replications = options.reps;
  for (const auto& row : rows) {
    rep.checks += row.checks;
    rep.max_relative_error = std::max(rep.max_relative_error, row.worst);
    if (row.violations > 0 && rep.violations == 0) {
      rep.first_violation = row.first;
    }
    rep.violations += row.violations;
  }
  return rep;
}

nlohmann::json to_json(const AuditReport& r) {
  return {{"replications", r.replications},
          {"checks", r.checks},
          {"violations", r.violations},
          {"max_relative_error", r.max_relative_error},
          {"first_violation", r.first_violation},
          {"pass", r.pass()}};
}

// ---------------------------------------------------------------------------
// MST scaling

MstScalingRow mst_scaling_point(int n, const MstScalingOptions& options) {
  if (n < 4) throw DomainError("MST scaling needs n >= 4");
  if (n > options.max_n) {
    throw RefusalError("n = " + std::to_string(n) + " exceeds max_n = " +
                       std::to_string(options.max_n));
  }
  if (options.reps < 2) throw DomainError("need >= 2 replications");
  const GraphicMatroidSpec graph = complete_graph(n);
  const int m = static_cast<int>(graph.edges.size());
  const CostModel model = CostModel::iid(m, UniformDist{1.0});
  const std::uint64_t seed = derive_seed(
      {options.seed, static_cast<std::uint64_t>(n)}, 0x6d73745f6e6bULL);

  struct Row {
    double cstar = 0.0;
    double vcg = 0.0;
  };
  auto one = [&](std::uint64_t r) {
    std::vector<double> costs(m);
    sample_costs_into(model, {seed, r}, costs);
    const TreeThresholds fast = graphic_tree_thresholds(graph, costs);
    return Row{fast.nominal_cost, fast.vcg_total.value()};
  };
  const auto rows =
      replicate_parallel<Row>(options.reps, options.threads, one);

  MstScalingRow out;
  out.n = n;
  out.replications = options.reps;
  const Matroid matroid = Matroid::graphic(graph);
  for (std::uint64_t r = 0; r < std::min(options.audit_reps, options.reps);
       ++r) {
    std::vector<double> costs(m);
    sample_costs_into(model, {seed, r}, costs);
    const TreeThresholds fast = graphic_tree_thresholds(graph, costs);
    const Instance instance(matroid, costs);
    const AuctionEvaluator eval(instance);
    double worst = relative_error(eval.min_cost().value(), fast.nominal_cost);
    for (std::size_t i = 0; i < fast.tree.size(); ++i) {
      worst = std::max(worst, relative_error(eval.threshold(fast.tree[i]).value(),
                                             fast.tree_threshold[i].value()));
    }
    if (m <= 500) {
      const RankProfile profile = rank_profile(instance);
      worst = std::max(worst,
                       relative_error(vcg_via_bridge_integral(
                                          profile, fast.nominal_cost),
                                      fast.vcg_total.value()));
    }
    out.max_audit_error = std::max(out.max_audit_error, worst);
    ++out.audited;
  }

  std::vector<double> c(rows.size());
  std::vector<double> v(rows.size());
  std::vector<double> gap(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c[i] = rows[i].cstar;
    v[i] = rows[i].vcg;
    gap[i] = v[i] - 2.0 * c[i];
  }
  auto scaled = [n](Estimate e) {
    return Estimate{e.value * n, e.se * n};
  };
  out.mean_cstar = mean_estimate(c);
  out.mean_vcg = mean_estimate(v);
  out.n_var_vcg = scaled(variance_estimate(v));
  out.n_var_cstar = scaled(variance_estimate(c));
  out.th2_gap = mean_estimate(gap);
  return out;
}

nlohmann::json to_json(const MstScalingRow& row) {
  return {{"n", row.n},
          {"replications", row.replications},
          {"mean_cstar", to_json(row.mean_cstar)},
          {"mean_vcg", to_json(row.mean_vcg)},
          {"n_var_vcg", to_json(row.n_var_vcg)},
          {"n_var_cstar", to_json(row.n_var_cstar)},
          {"th2_gap", to_json(row.th2_gap)},
          {"audited", row.audited},
          {"max_audit_error", row.max_audit_error}};
}

std::string to_csv(const std::vector<MstScalingRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "n,mean_cstar,mean_vcg,n_var_vcg,n_var_cstar,se_mean_cstar,"
         "se_mean_vcg,se_n_var_vcg,se_n_var_cstar,th2_gap,se_th2_gap\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.mean_cstar.value << ',' << r.mean_vcg.value << ','
        << r.n_var_vcg.value << ',' << r.n_var_cstar.value << ','
        << r.mean_cstar.se << ',' << r.mean_vcg.se << ',' << r.n_var_vcg.se
        << ',' << r.n_var_cstar.se << ',' << r.th2_gap.value << ','
        << r.th2_gap.se << '\n';
  }
  return out.str();
}

}  // namespace vcg_lab
