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

#include "vcg_lab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "vcg_lab/errors.hpp"
#include "vcg_lab/matroid.hpp"
#include "vcg_lab/mc_lab.hpp"
#include "vcg_lab/oracles.hpp"
#include "vcg_lab/replicate.hpp"
#include "vcg_lab/set_system.hpp"

namespace vcg_lab {

namespace {

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw DomainError("expected an integer list, got '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LedgerEntry oracle_entry(const std::string& name, const Estimate& e,
                         double oracle, double gate) {
  LedgerEntry out;
  out.name = name;
  out.lhs = e.value;
  out.rhs = oracle;
  out.se = e.se;
  out.z = e.se > 0.0 ? (e.value - oracle) / e.se : 0.0;
  out.pass = std::fabs(out.z) <= gate;
  return out;
}

bool is_standard_uniform(const Distribution& d) {
  const auto* u = std::get_if<UniformDist>(&d);
  return u != nullptr && u->d == 1.0;
}

bool is_unit_exponential(const Distribution& d) {
  const auto* e = std::get_if<ExponentialDist>(&d);
  return e != nullptr && e->rate == 1.0;
}

std::string csv_with_config(const nlohmann::json& config,
                            const std::string& body) {
  return "# config: " + config.dump() + "\n" + body;
}

struct Context {
  const ExperimentConfig& config;
  System system;
  Distribution dist;
  RunOptions options;
};

// Oracle comparisons for the systems and cost laws with closed forms.
Ledger oracle_comparison(const Context& ctx, const EstimateReport& rep) {
  Ledger ledger;
  const Matroid* m = std::get_if<Matroid>(&ctx.system);
  const auto* fam = std::get_if<StructureFamily>(&ctx.system);
  const bool k3path = fam != nullptr && *fam == k3_path_family();
  if (m != nullptr && m->kind() == MatroidKind::kUniform) {
    const auto [n, k] = *m->uniform_spec();
    if (k >= 1 && k < n && is_standard_uniform(ctx.dist)) {
      const auto s = uniform_matroid_uniform_stats(n, k);
      ledger.entries.push_back(
          oracle_entry("oracle_E_cstar", rep.mean_cstar, to_double(s.e_cstar), 3));
      ledger.entries.push_back(
          oracle_entry("oracle_E_vcg", rep.mean_vcg, to_double(s.e_vcg), 3));
      ledger.entries.push_back(oracle_entry("oracle_Var_cstar", rep.var_cstar,
                                            to_double(s.var_cstar), 3));
      ledger.entries.push_back(
          oracle_entry("oracle_Var_vcg", rep.var_vcg, to_double(s.var_vcg), 3));
      ledger.entries.push_back(oracle_entry("oracle_Var_diff", rep.var_diff,
                                            to_double(s.var_diff), 3));
    } else if (k >= 1 && k < n && is_unit_exponential(ctx.dist)) {
      const auto e = uniform_matroid_exponential_means(n, k);
      ledger.entries.push_back(
          oracle_entry("oracle_E_cstar", rep.mean_cstar, to_double(e.e_cstar), 3));
      ledger.entries.push_back(
          oracle_entry("oracle_E_vcg", rep.mean_vcg, to_double(e.e_vcg), 3));
    }
  }
  if (k3path && (is_standard_uniform(ctx.dist) || is_unit_exponential(ctx.dist))) {
    const MeanPair p = is_standard_uniform(ctx.dist)
                           ? k3_path_uniform_means()
                           : k3_path_exponential_means();
    ledger.entries.push_back(
        oracle_entry("oracle_E_cstar", rep.mean_cstar, to_double(p.e_cstar), 3));
    ledger.entries.push_back(
        oracle_entry("oracle_E_vcg", rep.mean_vcg, to_double(p.e_vcg), 3));
  }
  return ledger;
}

int finish(const ExperimentConfig& config, std::ostream& out,
           const std::string& text) {
  if (config.out.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return kExitPass;
  }
  std::ofstream file(config.out);
  if (!file) throw DomainError("cannot write '" + config.out + "'");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
  return kExitPass;
}

int cmd_audit(const Context& ctx, std::ostream& out) {
  if (std::get_if<Matroid>(&ctx.system) == nullptr) {
    throw DomainError("audit needs a matroid system");
  }
  const ExperimentTemplate tmpl(ctx.system, ctx.dist);
  const AuditReport rep = identity_audit(tmpl, ctx.options);
  const nlohmann::json config = to_json(ctx.config);
  if (ctx.config.format == "csv") {
    std::ostringstream body;
    body.precision(17);
    body << "replications,checks,violations,max_relative_error\n"
         << rep.replications << ',' << rep.checks << ',' << rep.violations
         << ',' << rep.max_relative_error << '\n';
    finish(ctx.config, out, csv_with_config(config, body.str()));
  } else {
    finish(ctx.config, out,
           nlohmann::json{{"config", config}, {"audit", to_json(rep)}}.dump(2));
  }
  return rep.pass() ? kExitPass : kExitIdentityViolation;
}

int cmd_estimate(const Context& ctx, std::ostream& out) {
  const ExperimentTemplate tmpl(ctx.system, ctx.dist);
  if (ctx.options.reps < 100) throw DomainError("estimate needs reps >= 100");
  const auto samples = simulate(tmpl, ctx.options);
  const EstimateReport rep = summarize(samples, ctx.options);
  const bool matroid = std::get_if<Matroid>(&ctx.system) != nullptr;

  Ledger checks = oracle_comparison(ctx, rep);
  if (matroid && is_standard_uniform(ctx.dist)) {
    std::vector<double> gap(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      gap[i] = samples[i].vcg - 2.0 * samples[i].cstar;
    }
    checks.entries.push_back(z_entry("mean_vcg_equals_twice_mean_cstar",
                                     rep.mean_vcg.value,
                                     2.0 * rep.mean_cstar.value, gap, 3.0));
    for (auto& e : variance_identities(samples).entries) {
      checks.entries.push_back(std::move(e));
    }
  }
  if (std::holds_alternative<ExponentialDist>(ctx.dist) ||
      std::holds_alternative<BetaDist>(ctx.dist)) {
    for (auto& e : monotone_inequalities(tmpl, samples).entries) {
      checks.entries.push_back(std::move(e));
    }
  }

  const nlohmann::json config = to_json(ctx.config);
  if (ctx.config.format == "csv") {
    finish(ctx.config, out,
           csv_with_config(config, to_csv(rep) + "\n" + to_csv(checks)));
  } else {
    finish(ctx.config, out,
           nlohmann::json{{"config", config},
                          {"estimate", to_json(rep)},
                          {"checks", to_json(checks)}}
               .dump(2));
  }
  return checks.all_pass() ? kExitPass : kExitStatisticalFailure;
}

int cmd_conditional(const Context& ctx, std::ostream& out) {
  const ExperimentTemplate tmpl(ctx.system, ctx.dist);
  const auto* fam = std::get_if<StructureFamily>(&ctx.system);
  const bool k3path = fam != nullptr && *fam == k3_path_family();
  const bool matroid = std::get_if<Matroid>(&ctx.system) != nullptr;
  const ConditionalReport rep =
      conditional_law(tmpl, ctx.options, ctx.config.bins);

  Ledger checks;
  std::vector<std::optional<double>> overlay(rep.bins.size());
  if (k3path && is_standard_uniform(ctx.dist)) {
    for (std::size_t b = 0; b < rep.bins.size(); ++b) {
      const ConditionalBin& bin = rep.bins[b];
      if (!bin.kept) continue;
      const double lo = std::clamp(bin.lo, 0.0, 2.0);
      const double hi = std::clamp(bin.hi, 0.0, 2.0);
      if (!(lo < hi)) continue;
      overlay[b] = k3_path_bin_cond_mean(lo, hi);
      std::ostringstream name;
      name << "bin_" << b << "_closed_form";
      checks.entries.push_back(
          oracle_entry(name.str(), bin.mean_cstar, *overlay[b], 4.0));
    }
  }
  if (matroid) {
    if (is_standard_uniform(ctx.dist)) {
      checks.entries.push_back(oracle_entry("slope_half", rep.slope, 0.5, 3.0));
    } else if (const auto* beta = std::get_if<BetaDist>(&ctx.dist)) {
      checks.entries.push_back(oracle_entry(
          "slope_beta_ratio", rep.slope, beta_ratio(beta->alpha), 3.0));
    } else if (std::holds_alternative<ExponentialDist>(ctx.dist)) {
      LedgerEntry e = oracle_entry("slope_below_half", rep.slope, 0.5, 0.0);
      e.pass = e.z <= -3.0;
      checks.entries.push_back(e);
    }
  }

  const nlohmann::json config = to_json(ctx.config);
  if (ctx.config.format == "csv") {
    std::ostringstream body;
    body.precision(17);
    body << "lo,hi,count,mean_vcg,mean_cstar,se,closed_form\n";
    for (std::size_t b = 0; b < rep.bins.size(); ++b) {
      const ConditionalBin& bin = rep.bins[b];
      if (!bin.kept) continue;
      body << bin.lo << ',' << bin.hi << ',' << bin.count << ','
           << bin.mean_vcg << ',' << bin.mean_cstar.value << ','
           << bin.mean_cstar.se << ',';
      if (overlay[b]) body << *overlay[b];
      body << '\n';
    }
    finish(ctx.config, out, csv_with_config(config, body.str()));
  } else {
    nlohmann::json report = to_json(rep);
    for (std::size_t b = 0; b < rep.bins.size(); ++b) {
      if (overlay[b]) report["bins"][b]["closed_form"] = *overlay[b];
    }
    finish(ctx.config, out,
           nlohmann::json{{"config", config},
                          {"conditional", report},
                          {"checks", to_json(checks)}}
               .dump(2));
  }
  return checks.all_pass() ? kExitPass : kExitStatisticalFailure;
}

int cmd_mst_scaling(const Context& ctx, std::ostream& out, std::ostream& err) {
  if (ctx.config.n_list.empty()) throw DomainError("empty --n list");
  MstScalingOptions opt;
  opt.seed = ctx.config.seed;
  opt.reps = ctx.options.reps;
  opt.threads = ctx.options.threads;
  opt.audit_reps = ctx.config.audit_reps;
  opt.max_n = ctx.config.max_n;
  for (int n : ctx.config.n_list) {
    if (n < 4) throw DomainError("MST scaling needs n >= 4");
    if (n > opt.max_n) {
      throw RefusalError("n = " + std::to_string(n) + " exceeds --max-n " +
                         std::to_string(opt.max_n));
    }
  }
  std::vector<MstScalingRow> rows;
  bool gap_ok = true;
  double worst_audit = 0.0;
  for (int n : ctx.config.n_list) {
    rows.push_back(mst_scaling_point(n, opt));
    const MstScalingRow& r = rows.back();
    err << "n=" << n << " mean_cstar=" << r.mean_cstar.value
        << " mean_vcg=" << r.mean_vcg.value << '\n';
    if (r.th2_gap.se > 0.0 && std::fabs(r.th2_gap.value) > 4.0 * r.th2_gap.se) {
      gap_ok = false;
    }
    worst_audit = std::max(worst_audit, r.max_audit_error);
  }
  const nlohmann::json config = to_json(ctx.config);
  if (ctx.config.format == "csv") {
    finish(ctx.config, out, csv_with_config(config, to_csv(rows)));
  } else {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : rows) list.push_back(to_json(r));
    const MstConstants c = mst_constants();
    finish(ctx.config, out,
           nlohmann::json{{"config", config},
                          {"rows", list},
                          {"limits",
                           {{"mean_cstar", c.zeta3},
                            {"mean_vcg", c.two_zeta3},
                            {"n_var_cstar", c.var_cstar_coeff},
                            {"n_var_vcg", c.var_vcg_coeff}}}}
               .dump(2));
  }
  if (worst_audit > 1e-9) return kExitIdentityViolation;
  return gap_ok ? kExitPass : kExitStatisticalFailure;
}

}  // namespace

System parse_system(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (kind == "k3path" && arg.empty()) return k3_path_family();
  if (kind == "uniform") {
    const auto nk = parse_ints(arg);
    if (nk.size() != 2) throw DomainError("expected uniform:N,K");
    return Matroid::uniform(nk[0], nk[1]);
  }
  if (kind == "complete" || kind == "cycle") {
    const auto n = parse_ints(arg);
    if (n.size() != 1) throw DomainError("expected " + kind + ":N");
    return Matroid::graphic(kind == "complete" ? complete_graph(n[0])
                                               : cycle_graph(n[0]));
  }
  if (kind == "graphic") {
    if (arg == "k3") return Matroid::graphic(complete_graph(3));
    if (arg == "k4") return Matroid::graphic(complete_graph(4));
    if (arg == "c5") return Matroid::graphic(cycle_graph(5));
    if (arg == "tree") return Matroid::graphic(path_graph(4));
    if (arg.empty()) throw DomainError("expected graphic:<name|file>");
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open edge list '" + arg + "'");
    return Matroid::graphic(parse_edge_list(in));
  }
  if (kind == "family") {
    if (arg.empty()) throw DomainError("expected family:<json|file>");
    const std::string text = arg.front() == '{' ? arg : read_file(arg);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("bad family JSON: ") + e.what());
    }
    return family_from_json(j);
  }
  throw DomainError("unknown system '" + spec + "'");
}

std::uint64_t default_reps(const std::string& command) {
  if (command == "estimate" || command == "conditional") return 100000;
  return 10000;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"command", c.command},
                      {"system", c.system},
                      {"dist", c.dist},
                      {"reps", c.reps.value_or(default_reps(c.command))},
                      {"seed", c.seed},
                      {"format", c.format}};
  if (c.param) j["param"] = *c.param;
  if (c.command == "conditional") j["bins"] = c.bins;
  if (c.command == "mst-scaling") {
    j["n_list"] = c.n_list;
    j["audit_reps"] = c.audit_reps;
    j["max_n"] = c.max_n;
    j.erase("system");
    j.erase("dist");
  }
  return j;
}

int run_command(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "csv") {
      throw DomainError("--format must be json or csv");
    }
    if (config.command == "oracle-dump") {
      return finish(config, out, oracle_dump().dump(2));
    }
    RunOptions options;
    options.seed = config.seed;
    options.reps = config.reps.value_or(default_reps(config.command));
    options.threads = resolve_threads(config.threads);
    if (options.reps < 1) throw DomainError("--reps must be positive");
    if (config.command == "mst-scaling") {
      Context ctx{config, Matroid::uniform(1, 1), UniformDist{1.0}, options};
      return cmd_mst_scaling(ctx, out, err);
    }
    const Distribution dist = parse_distribution(config.dist, config.param);
    Context ctx{config, parse_system(config.system), dist, options};
    if (config.command == "audit") return cmd_audit(ctx, out);
    if (config.command == "estimate") return cmd_estimate(ctx, out);
    if (config.command == "conditional") {
      if (config.bins < 1) throw DomainError("--bins must be positive");
      return cmd_conditional(ctx, out);
    }
    throw DomainError("unknown command '" + config.command + "'");
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const StatisticsError& e) {
    err << "statistics error: " << e.what() << '\n';
    return kExitStatisticalFailure;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NoFiniteBasisError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"VCG procurement auction experiments", "vcg-lab"};
  app.require_subcommand(1);
  ExperimentConfig config;
  std::string n_list;
  double param = 0.0;
  std::uint64_t reps = 0;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("--out", config.out, "Output file (default: stdout)");
    sub->add_option("--format", config.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--reps", reps, "Replications");
    sub->add_option("--threads", threads,
                    "Worker threads (fallback: VCG_LAB_THREADS)");
  };
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", config.system, "System spec");
    sub->add_option("--dist", config.dist, "uniform | exp | beta[:param]");
    sub->add_option("--param", param, "Distribution parameter");
  };

  CLI::App* audit = app.add_subcommand("audit", "Exact per-sample identities");
  add_common(audit);
  add_system(audit);
  CLI::App* est = app.add_subcommand("estimate", "Monte Carlo estimates");
  add_common(est);
  add_system(est);
  CLI::App* cond =
      app.add_subcommand("conditional", "Conditional law of c* given C^VCG");
  add_common(cond);
  add_system(cond);
  cond->add_option("--bins", config.bins, "Number of bins");
  CLI::App* mst = app.add_subcommand("mst-scaling", "MST on complete graphs");
  add_common(mst);
  mst->add_option("--n", n_list, "Comma-separated vertex counts");
  mst->add_option("--audit-reps", config.audit_reps,
                  "Replications re-checked against the generic path");
  mst->add_option("--max-n", config.max_n, "Largest allowed n");
  CLI::App* dump = app.add_subcommand("oracle-dump", "Closed-form constants");
  dump->add_option("--out", config.out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    auto given = [sub](const std::string& name) {
      const CLI::Option* opt = sub->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--reps")) config.reps = reps;
    if (given("--threads")) config.threads = threads;
    if (given("--param")) config.param = param;
  }
  try {
    if (!n_list.empty()) config.n_list = parse_ints(n_list);
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return run_command(config, out, err);
}

}  // namespace vcg_lab
