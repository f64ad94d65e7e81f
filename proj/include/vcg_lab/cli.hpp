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

#ifndef VCG_LAB_CLI_HPP_
#define VCG_LAB_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcg_lab/sampling.hpp"
#include "vcg_lab/vcg.hpp"

namespace vcg_lab {

enum ExitCode : int {
  kExitPass = 0,
  kExitStatisticalFailure = 1,
  kExitConfigError = 2,
  kExitIdentityViolation = 3,
};

// System strings:
//   uniform:N,K        uniform matroid U_{N,K}
//   graphic:k3|k4|c5|tree|<edge-list file>
//   complete:N | cycle:N
//   k3path             the path family {{0}, {1, 2}} of K3
//   family:<json>      {"ground_size": ..., "structures": [...]}, inline or a file
System parse_system(const std::string& spec);

struct ExperimentConfig {
  std::string command;
  std::string system = "uniform:4,2";
  std::string dist = "uniform";
  std::optional<double> param;
  std::optional<std::uint64_t> reps;
  std::uint64_t seed = 1;
  int bins = 20;
  std::string out;  // empty: standard output
  std::string format = "json";
  std::optional<int> threads;
  std::vector<int> n_list = {25, 50, 100, 200};
  std::uint64_t audit_reps = 2;
  int max_n = 400;
};

std::uint64_t default_reps(const std::string& command);
nlohmann::json to_json(const ExperimentConfig& config);

// Runs one subcommand. The report goes to config.out (or `out`), diagnostics
// to `err`. Returns an ExitCode.
int run_command(const ExperimentConfig& config, std::ostream& out,
                std::ostream& err);

// Parses argv-style arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace vcg_lab

#endif  // VCG_LAB_CLI_HPP_
