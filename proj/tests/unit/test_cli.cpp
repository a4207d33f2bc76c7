// Copyright 2026 The qcorr Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr_cli/cli.hpp"

namespace qcorr::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qcorr");
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qcorr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "demo.cfg";
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

const char* kDemo =
    "n_grid = 4, 6\n"
    "alpha_grid = 0.25, 3.0\n"
    "trials = 3\n"
    "seed = 2024\n";

TEST_F(CliTest, SweepIsByteReproducible) {
  const fs::path cfg = write_config(kDemo);
  const CliResult a = run_cli({"sweep", cfg.string(), "--out", (dir_ / "a").string(), "--threads", "1"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const CliResult b = run_cli({"sweep", cfg.string(), "--out", (dir_ / "b").string(), "--threads", "2"});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(slurp(dir_ / "a" / "records.csv"), slurp(dir_ / "b" / "records.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "summary.csv"), slurp(dir_ / "b" / "summary.csv"));
  const std::string summary = slurp(dir_ / "a" / "summary.csv");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 5);
}

TEST_F(CliTest, SeedOverrideChangesRecords) {
  const fs::path cfg = write_config(kDemo);
  ASSERT_EQ(run_cli({"sweep", cfg.string(), "--out", (dir_ / "a").string()}).code, kExitOk);
  ASSERT_EQ(run_cli({"sweep", cfg.string(), "--out", (dir_ / "b").string(), "--seed", "7"}).code,
            kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "records.csv"), slurp(dir_ / "b" / "records.csv"));
}

TEST_F(CliTest, MissingConfigNamesPath) {
  const std::string missing = (dir_ / "nope.cfg").string();
  const CliResult r = run_cli({"sweep", missing, "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find(missing), std::string::npos);
}

TEST_F(CliTest, UnknownKeyIsConfigError) {
  const fs::path cfg = write_config("trails = 3\n");
  const CliResult r = run_cli({"sweep", cfg.string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("trials"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  const fs::path cfg = write_config(kDemo);
  std::ofstream(dir_ / "blocker") << "x";
  const CliResult r = run_cli({"sweep", cfg.string(), "--out", (dir_ / "blocker" / "sub").string()});
  EXPECT_EQ(r.code, kExitIo) << r.err;
}

TEST_F(CliTest, ClassifyPrintsJson) {
  const CliResult r = run_cli({"classify", "--n", "10", "--m", "5", "--seed", "3", "--mode", "bernoulli"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("n"), 10);
  EXPECT_EQ(j.at("verdict"), "LocalCertified");
  EXPECT_FALSE(j.at("certificate").is_null());
  EXPECT_TRUE(j.at("diagnostics").contains("linf_l2"));
}

TEST_F(CliTest, ClassifyRejectsBadArguments) {
  EXPECT_EQ(run_cli({"classify", "--n", "4", "--m", "0"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"classify", "--n", "4", "--m", "2", "--mode", "magic"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"classify", "--n", "4"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitConfig);
}

TEST_F(CliTest, WitnessPrintsJson) {
  const CliResult r = run_cli({"witness", "--n", "12", "--m", "1", "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("omega"));
}

TEST_F(CliTest, RmtChecks) {
  CliResult r = run_cli({"rmt", "--check", "mp", "--C", "0"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "f(0) = 1\n");
  r = run_cli({"rmt", "--check", "theta", "--alpha", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "theta(1) = 0.816496580928\n");
  r = run_cli({"rmt", "--check", "alpha0"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("alpha0 = 0.00445515", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("reference = 0.00404"), std::string::npos);
  EXPECT_EQ(run_cli({"rmt", "--check", "mp", "--C", "3"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"rmt", "--check", "nothing"}).code, kExitConfig);
}

TEST_F(CliTest, MpCurveCsv) {
  const fs::path csv = dir_ / "mp.csv";
  const CliResult r = run_cli({"rmt", "--check", "mp", "--points", "5", "--csv", csv.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("C,f\n0,1\n", 0), 0u) << text;
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
}

TEST_F(CliTest, DecoupleCsv) {
  const CliResult r = run_cli({"decouple", "--n", "40", "--m", "10", "--seeds", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("seed,n,m,alpha,residual,theta,ratio\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

}  // namespace
}  // namespace qcorr::cli
