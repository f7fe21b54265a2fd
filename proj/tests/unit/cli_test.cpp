//
// Copyright 2026 The dpmedreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpmr/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace dpmr::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpmr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string make_data(const std::string& name, const std::string& n = "400") {
    const Outcome o = invoke({"generate", "--n", n, "--seed", "5", "--out", path(name), "--no-timing"});
    EXPECT_EQ(o.code, kExitOk) << o.err;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateIsByteReproducible) {
  const Outcome a = invoke({"generate", "--n", "300", "--seed", "9", "--out", path("a.csv"), "--no-timing"});
  const Outcome b = invoke({"generate", "--n", "300", "--seed", "9", "--out", path("b.csv"), "--no-timing"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv.manifest")), slurp(path("b.csv.manifest")));
  EXPECT_NE(a.out.find("wrote 300 rows"), std::string::npos) << a.out;
  const std::string c_data = (invoke({"generate", "--n", "300", "--seed", "10", "--out", path("c.csv")}), slurp(path("c.csv")));
  EXPECT_NE(c_data, slurp(path("a.csv")));
}

TEST_F(CliTest, GenerateManifestRecordsSettings) {
  make_data("d.csv");
  const std::string m = slurp(path("d.csv.manifest"));
  EXPECT_NE(m.find("seed=5"), std::string::npos) << m;
  EXPECT_NE(m.find("wall_seconds=NA"), std::string::npos) << m;
  EXPECT_NE(m.find("run_id="), std::string::npos) << m;
  EXPECT_EQ(m.find(dir_.string()), std::string::npos) << m;
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"generate", "--n", "0", "--out", path("x.csv")}).code, kExitUsage);
  EXPECT_EQ(invoke({"generate", "--n", "10"}).code, kExitUsage);
  EXPECT_EQ(invoke({"generate", "--n", "10", "--d", "2", "--out", path("x.csv")}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  const std::string data = make_data("u.csv");
  EXPECT_EQ(invoke({"fit", "--algo", "baseline-irls", "--data", data, "--epsilon", "1"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"fit", "--algo", "alg1", "--data", data, "--N0", "5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"fit", "--algo", "alg9", "--data", data}).code, kExitUsage);
  EXPECT_EQ(invoke({"fit", "--algo", "alg1", "--data", data, "--epsilon", "-1"}).code,
            kExitUsage);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  const Outcome o = invoke({"fit", "--algo", "alg1", "--data", path("missing.csv")});
  EXPECT_EQ(o.code, kExitRuntime);
  EXPECT_NE(o.err.find("missing.csv"), std::string::npos) << o.err;
  std::ofstream(path("bad.csv")) << "x1,y\n0.5,nan\n";
  EXPECT_EQ(invoke({"fit", "--algo", "alg1", "--data", path("bad.csv")}).code, kExitRuntime);
}

TEST_F(CliTest, HelpAndVersionSucceed) {
  const Outcome h = invoke({"--help"});
  EXPECT_EQ(h.code, kExitOk);
  EXPECT_NE(h.out.find("generate"), std::string::npos);
  const Outcome v = invoke({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

TEST_F(CliTest, FitIsDeterministicForEveryAlgorithm) {
  const std::string data = make_data("f.csv");
  for (const std::string algo : {"alg1", "alg2", "alg3", "baseline-smooth", "baseline-irls"}) {
    std::vector<std::string> args{"fit", "--algo", algo, "--data", data, "--no-timing", "--truth",
                                  "2,3,0,-4"};
    if (algo.rfind("alg", 0) == 0) {
      args.push_back("--seed");
      args.push_back("3");
    }
    auto a_args = args, b_args = args;
    a_args.insert(a_args.end(), {"--out", path(algo + "_a.csv")});
    b_args.insert(b_args.end(), {"--out", path(algo + "_b.csv")});
    const Outcome a = invoke(a_args);
    const Outcome b = invoke(b_args);
    ASSERT_EQ(a.code, kExitOk) << algo << ": " << a.err;
    ASSERT_EQ(b.code, kExitOk) << algo << ": " << b.err;
    const std::string ra = slurp(path(algo + "_a.csv"));
    EXPECT_EQ(ra, slurp(path(algo + "_b.csv"))) << algo;
    EXPECT_EQ(slurp(path(algo + "_a.csv.manifest")), slurp(path(algo + "_b.csv.manifest")))
        << algo;
    EXPECT_EQ(ra.rfind("algorithm,parameter,estimate,true_value,elapsed_seconds,run_id\n", 0), 0u)
        << ra;
    EXPECT_NE(ra.find(algo + ",beta3,"), std::string::npos) << ra;
  }
}

TEST_F(CliTest, FitSeedChangesPrivateOutput) {
  const std::string data = make_data("s.csv");
  const Outcome a = invoke({"fit", "--algo", "alg1", "--data", data, "--seed", "1", "--no-timing"});
  const Outcome b = invoke({"fit", "--algo", "alg1", "--data", data, "--seed", "2", "--no-timing"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out, b.out);
}

TEST_F(CliTest, FitMarkdownHasTable) {
  const std::string data = make_data("m.csv");
  const Outcome o = invoke({"fit", "--algo", "alg3", "--data", data, "--seed", "1",
                            "--format", "markdown", "--truth", "2,3,0,-4"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("| | Algorithm 3 | True value |"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("| beta3 |"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("| time(s) |"), std::string::npos) << o.out;
}

TEST_F(CliTest, BenchIsDeterministicWithoutTiming) {
  const std::vector<std::string> base{"bench", "--replicates", "3", "--n", "300,600", "--algos",
                                      "alg1,alg3,baseline-smooth", "--seed", "4", "--no-timing"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.md")});
  b.insert(b.end(), {"--out", path("b.md")});
  ASSERT_EQ(invoke(a).code, kExitOk);
  ASSERT_EQ(invoke(b).code, kExitOk);
  const std::string table = slurp(path("a.md"));
  EXPECT_EQ(table, slurp(path("b.md")));
  EXPECT_EQ(slurp(path("a.md.manifest")), slurp(path("b.md.manifest")));
  EXPECT_NE(table.find("### n = 300"), std::string::npos) << table;
  EXPECT_NE(table.find("### n = 600"), std::string::npos) << table;
  EXPECT_NE(table.find("| L1 error"), std::string::npos) << table;
}

TEST_F(CliTest, BenchTimedRunsAgreeAfterMaskingTimes) {
  auto mask = [](std::string s) {
    std::istringstream in(s);
    std::string line, outs;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() == 9 && cells[0] != "n") cells[6] = "*";
      for (std::size_t i = 0; i < cells.size(); ++i) outs += (i ? "," : "") + cells[i];
      outs += '\n';
    }
    return outs;
  };
  const std::vector<std::string> base{"bench", "--replicates", "2", "--n", "300", "--algos",
                                      "alg3", "--seed", "4", "--format", "csv"};
  const Outcome a = invoke(base);
  const Outcome b = invoke(base);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(mask(a.out), mask(b.out));
}

TEST_F(CliTest, ProbeAlg3Passes) {
  const Outcome o = invoke({"probe", "--target", "alg3", "--trials", "200", "--seed", "1"});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_EQ(o.out.rfind("PASS", 0), 0u) << o.out;
}

TEST_F(CliTest, ProbeSamplersPasses) {
  const Outcome o = invoke({"probe", "--target", "samplers", "--trials", "100000", "--seed", "1"});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos) << o.out;
}

}  // namespace
}  // namespace dpmr::cli
