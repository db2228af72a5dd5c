// Copyright 2026 The enercal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "enercal/calibrator_json.h"
#include "enercal/dataset.h"
#include "enercal/scores.h"
#include "gtest/gtest.h"

namespace enercal::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("enercal_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "enercal");
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  static std::vector<std::string> Lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  }

  void GenPair() {
    ASSERT_EQ(Run({"gen", "--n", "400", "--k", "5", "--margin", "1.5",
                   "--seed", "1", "--out", Path("val.csv")}),
              kExitOk);
    ASSERT_EQ(Run({"gen", "--n", "100", "--k", "5", "--kind", "semantic",
                   "--seed", "2", "--out", Path("ood.csv")}),
              kExitOk);
  }

  fs::path dir_;
  std::stringstream out_;
  std::stringstream err_;
};

TEST_F(CliTest, GenShape) {
  ASSERT_EQ(Run({"gen", "--n", "100", "--k", "10", "--seed", "3", "--out",
                 Path("g.csv")}),
            kExitOk)
      << err_.str();
  const auto lines = Lines(Slurp(Path("g.csv")));
  ASSERT_EQ(lines.size(), 101u);
  EXPECT_EQ(std::count(lines[0].begin(), lines[0].end(), ','), 10);
  EXPECT_EQ(LoadCsv(Path("g.csv")).size(), 100u);
}

TEST_F(CliTest, GenAliasAndDeterminism) {
  ASSERT_EQ(Run({"gen", "--seed", "8", "--out", Path("a.csv")}), kExitOk);
  ASSERT_EQ(Run({"gen-synthetic", "--seed", "8", "--out", Path("b.csv")}), kExitOk);
  EXPECT_EQ(Slurp(Path("a.csv")), Slurp(Path("b.csv")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({"gen", "--n", "10"}), kExitUsage);
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"gen", "--n", "ten", "--out", Path("x.csv")}), kExitUsage);
  EXPECT_EQ(Run({"fit", "--method", "spline", "--val", "v", "--out", "o"}),
            kExitUsage);
  EXPECT_EQ(Run({"bench", "--methods", "ts,magic", "--out", Path("b.csv")}),
            kExitUsage);
  EXPECT_FALSE(fs::exists(Path("b.csv")));
}

TEST_F(CliTest, GenScenarioValidationIsUsageError) {
  EXPECT_EQ(Run({"gen", "--kind", "id", "--severity", "2", "--out",
                 Path("x.csv")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("error:"), std::string::npos);
}

TEST_F(CliTest, FitTemperatureAndEnergy) {
  GenPair();
  ASSERT_EQ(Run({"fit", "--method", "ts", "--val", Path("val.csv"), "--out",
                 Path("ts.json")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(KindName(LoadCalibrator(Path("ts.json"))), "ts");

  EXPECT_EQ(Run({"fit", "--method", "energy", "--val", Path("val.csv"), "--out",
                 Path("e.json")}),
            kExitUsage);
  ASSERT_EQ(Run({"fit", "--method", "energy", "--val", Path("val.csv"), "--ood",
                 Path("ood.csv"), "--out", Path("e.json")}),
            kExitOk)
      << err_.str();
  const Calibrator energy = LoadCalibrator(Path("e.json"));
  EXPECT_EQ(KindName(energy), "energy");
  EXPECT_EQ(ClassCount(energy), 5);
}

TEST_F(CliTest, FitRejectsUnlabeledValidation) {
  GenPair();
  EXPECT_EQ(Run({"fit", "--method", "ts", "--val", Path("ood.csv"), "--out",
                 Path("ts.json")}),
            kExitFailure);
  EXPECT_EQ(Run({"fit", "--method", "ts", "--val", Path("missing.csv"), "--out",
                 Path("ts.json")}),
            kExitFailure);
}

TEST_F(CliTest, ApplyPreservesRowsAndLabels) {
  GenPair();
  ASSERT_EQ(Run({"fit", "--method", "energy", "--val", Path("val.csv"), "--ood",
                 Path("ood.csv"), "--out", Path("e.json")}),
            kExitOk);
  ASSERT_EQ(Run({"apply", "--params", Path("e.json"), "--data", Path("val.csv"),
                 "--out", Path("pred.csv")}),
            kExitOk)
      << err_.str();
  const LogitDataset val = LoadCsv(Path("val.csv"));
  const auto lines = Lines(Slurp(Path("pred.csv")));
  ASSERT_EQ(lines.size(), val.size() + 1);
  EXPECT_EQ(lines[0], "row,pred_label,confidence,p0,p1,p2,p3,p4");
  for (size_t i = 0; i < val.size(); ++i) {
    std::stringstream row(lines[i + 1]);
    std::string index;
    std::string label;
    std::getline(row, index, ',');
    std::getline(row, label, ',');
    EXPECT_EQ(index, std::to_string(i));
    EXPECT_EQ(std::stoi(label), ArgMax(val.row(i)));
  }
}

TEST_F(CliTest, ApplyClassCountMismatch) {
  GenPair();
  ASSERT_EQ(Run({"fit", "--method", "ts", "--val", Path("val.csv"), "--out",
                 Path("ts.json")}),
            kExitOk);
  ASSERT_EQ(Run({"gen", "--k", "3", "--n", "10", "--out", Path("k3.csv")}),
            kExitOk);
  EXPECT_EQ(Run({"apply", "--params", Path("ts.json"), "--data", Path("k3.csv"),
                 "--out", Path("pred.csv")}),
            kExitFailure);
}

TEST_F(CliTest, EvalReportAndReliability) {
  GenPair();
  ASSERT_EQ(Run({"fit", "--method", "ts", "--val", Path("val.csv"), "--out",
                 Path("ts.json")}),
            kExitOk);
  ASSERT_EQ(Run({"eval", "--params", Path("ts.json"), "--data", Path("val.csv"),
                 "--ood", Path("ood.csv"), "--out", Path("report.csv"),
                 "--reliability", Path("rel.csv")}),
            kExitOk)
      << err_.str();
  const auto report = Lines(Slurp(Path("report.csv")));
  ASSERT_EQ(report.size(), 3u);
  EXPECT_EQ(report[0],
            "dataset,calibrator,n,accuracy,mean_confidence,ece,mce,sce,auroc,"
            "aupr_in,aupr_out");
  EXPECT_EQ(report[1].rfind("data,ts,400,", 0), 0u);
  EXPECT_EQ(report[2].rfind("ood,ts,100,,", 0), 0u);
  const auto rel = Lines(Slurp(Path("rel.csv")));
  ASSERT_EQ(rel.size(), 16u);
  EXPECT_EQ(rel[0], "bin,lower,upper,count,confidence,accuracy");
}

TEST_F(CliTest, EvalPerfectSeparation) {
  // ID rows are confident, OOD rows are uniform.
  {
    std::ofstream data(Path("id.csv"));
    data << "label,z0,z1\n0,9,0\n1,0,9\n0,8,0\n";
    std::ofstream ood(Path("ood.csv"));
    ood << "label,z0,z1\n-1,0,0\n-1,1,1\n";
  }
  ASSERT_EQ(Run({"fit", "--method", "ts", "--val", Path("id.csv"), "--out",
                 Path("ts.json")}),
            kExitOk);
  for (const char* score : {"confidence", "energy"}) {
    ASSERT_EQ(Run({"eval", "--params", Path("ts.json"), "--data", Path("id.csv"),
                   "--ood", Path("ood.csv"), "--score", score, "--out",
                   Path("report.csv")}),
              kExitOk)
        << err_.str();
    const auto report = Lines(Slurp(Path("report.csv")));
    ASSERT_EQ(report.size(), 3u);
    EXPECT_NE(report[2].find(",1,1,1"), std::string::npos) << report[2];
  }
}

TEST_F(CliTest, BenchIsDeterministic) {
  const std::vector<std::string> args = {
      "bench", "--n", "400", "--seeds", "2", "--methods", "none,ts,energy",
      "--out"};
  auto first = args;
  first.push_back(Path("b1.csv"));
  auto second = args;
  second.push_back(Path("b2.csv"));
  ASSERT_EQ(Run(first), kExitOk) << err_.str();
  ASSERT_EQ(Run(second), kExitOk);
  const std::string text = Slurp(Path("b1.csv"));
  EXPECT_EQ(text, Slurp(Path("b2.csv")));
  const auto lines = Lines(text);
  EXPECT_EQ(lines[0], "method,metric,value");
  EXPECT_EQ(lines.size(), 1u + 3u * 8u);
}

}  // namespace
}  // namespace enercal::cli
