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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vcg_lab/errors.hpp"

namespace vcg_lab {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + name;
}

TEST(CliTest, ParseSystem) {
  const System u = parse_system("uniform:4,2");
  EXPECT_EQ(std::get<Matroid>(u).full_rank(), 2);
  EXPECT_EQ(ground_size(parse_system("complete:5")), 10);
  EXPECT_EQ(ground_size(parse_system("cycle:4")), 4);
  EXPECT_EQ(ground_size(parse_system("graphic:k4")), 6);
  EXPECT_EQ(ground_size(parse_system("graphic:c5")), 5);
  EXPECT_EQ(ground_size(parse_system("graphic:tree")), 3);
  EXPECT_EQ(std::get<StructureFamily>(parse_system("k3path")),
            k3_path_family());
  const System f =
      parse_system(R"(family:{"ground_size": 3, "structures": [[0], [1, 2]]})");
  EXPECT_EQ(std::get<StructureFamily>(f), k3_path_family());
  EXPECT_THROW(parse_system("uniform:4"), DomainError);
  EXPECT_THROW(parse_system("uniform:4,x"), DomainError);
  EXPECT_THROW(parse_system("graphic:/no/such/file"), DomainError);
  EXPECT_THROW(parse_system("family:{bad"), DomainError);
  EXPECT_THROW(parse_system("torus:3"), DomainError);
}

TEST(CliTest, EdgeListFile) {
  const std::string path = temp_path("square.edges");
  {
    std::ofstream out(path);
    out << "# square with a diagonal\n0 1\n1 2\n2 3\n3 0\n0 2\n";
  }
  const System s = parse_system("graphic:" + path);
  EXPECT_EQ(ground_size(s), 5);
  const CliRun r = run({"audit", "--system", "graphic:" + path, "--reps", "200"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  std::remove(path.c_str());
}

TEST(CliTest, AuditPassesOnTriangle) {
  const CliRun r = run({"audit", "--system", "graphic:k3", "--reps", "2000"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["audit"]["pass"].get<bool>());
  EXPECT_EQ(j["config"]["system"], "graphic:k3");
  EXPECT_EQ(j["config"]["reps"], 2000);
}

TEST(CliTest, AuditUniformIncludesExtendedThresholds) {
  const CliRun r = run({"audit", "--system", "uniform:6,3", "--reps", "500"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  // 6 selection + 3 integrals + 6 thresholds + 12 extended per replication.
  EXPECT_EQ(j["audit"]["checks"], 500 * (6 + 3 + 6 + 12));
}

TEST(CliTest, AuditRefusesTree) {
  const CliRun r = run({"audit", "--system", "graphic:tree"});
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("bridge"), std::string::npos);
  EXPECT_NE(r.err.find("0 1 2"), std::string::npos);
}

TEST(CliTest, AuditRejectsFamilies) {
  EXPECT_EQ(run({"audit", "--system", "k3path"}).code, kExitConfigError);
}

TEST(CliTest, EstimateComparesWithOracle) {
  const CliRun r = run({"estimate", "--system", "uniform:4,2", "--reps", "50000",
                     "--seed", "3"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["estimate"]["mean_cstar"]["value"].get<double>(), 0.6, 0.01);
  bool saw_oracle = false;
  bool saw_identity = false;
  for (const auto& e : j["checks"]["entries"]) {
    saw_oracle |= e["name"] == "oracle_Var_diff";
    saw_identity |= e["name"] == "var_diff_equals_sumsq_mean";
  }
  EXPECT_TRUE(saw_oracle);
  EXPECT_TRUE(saw_identity);
}

TEST(CliTest, EstimateBetaRatio) {
  const CliRun r = run({"estimate", "--system", "graphic:k3", "--dist", "beta",
                     "--param", "2", "--reps", "50000"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["estimate"]["ratio"]["value"].get<double>(), 2.0 / 3.0, 0.02);
  EXPECT_EQ(j["config"]["param"], 2.0);
}

TEST(CliTest, OutputIsReproducible) {
  const std::vector<std::string> args = {"estimate", "--system", "k3path",
                                         "--reps", "5000", "--seed", "8"};
  const CliRun a = run(args);
  auto more = args;
  more.insert(more.end(), {"--threads", "4"});
  const CliRun b = run(more);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(CliTest, CsvCarriesConfig) {
  const CliRun r = run({"estimate", "--system", "graphic:k4", "--reps", "2000",
                     "--format", "csv"});
  EXPECT_EQ(r.out.rfind("# config: {", 0), 0u);
  EXPECT_NE(r.out.find("quantity,value,se\n"), std::string::npos);
}

TEST(CliTest, WritesOutputFile) {
  const std::string path = temp_path("estimate.json");
  const CliRun r = run({"estimate", "--system", "uniform:3,1", "--reps", "1000",
                     "--out", path});
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["config"]["system"], "uniform:3,1");
  std::remove(path.c_str());
}

TEST(CliTest, ConditionalOverlaysClosedForm) {
  const CliRun r = run({"conditional", "--system", "k3path", "--reps", "100000",
                     "--bins", "10", "--format", "csv"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  EXPECT_NE(r.out.find("lo,hi,count,mean_vcg,mean_cstar,se,closed_form\n"),
            std::string::npos);
}

TEST(CliTest, ConditionalSlopeOnMatroid) {
  const CliRun r = run({"conditional", "--system", "uniform:5,2", "--reps",
                     "50000"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["bins"], 20);
  EXPECT_EQ(j["checks"]["entries"][0]["name"], "slope_half");
}

TEST(CliTest, UnderpopulatedBinsAreAStatisticalFailure) {
  const CliRun r = run({"conditional", "--system", "uniform:5,2", "--reps", "20",
                     "--bins", "10"});
  EXPECT_EQ(r.code, kExitStatisticalFailure);
}

TEST(CliTest, MstScaling) {
  const CliRun r = run({"mst-scaling", "--n", "6,12", "--reps", "2000"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["n"], 12);
  EXPECT_NEAR(j["limits"]["n_var_vcg"].get<double>(), 4.33873, 1e-5);
  EXPECT_EQ(run({"mst-scaling", "--n", "3"}).code, kExitConfigError);
  EXPECT_EQ(run({"mst-scaling", "--n", "50", "--max-n", "40"}).code,
            kExitConfigError);
  EXPECT_EQ(run({"mst-scaling", "--n", "5,x"}).code, kExitConfigError);
}

TEST(CliTest, OracleDump) {
  const CliRun r = run({"oracle-dump"});
  EXPECT_EQ(r.code, kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("mst_constants"));
}

TEST(CliTest, ConfigurationErrors) {
  EXPECT_EQ(run({}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--bogus"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--system", "nope"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--dist", "gamma"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--format", "xml"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--reps", "50"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--threads", "0"}).code, kExitConfigError);
  EXPECT_EQ(run({"conditional", "--bins", "0"}).code, kExitConfigError);
  EXPECT_EQ(run({"estimate", "--system", "uniform:3,3"}).code,
            kExitConfigError);
}

TEST(CliTest, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("mst-scaling"), std::string::npos);
}

}  // namespace
}  // namespace vcg_lab
