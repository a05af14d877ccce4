/******************************************************************************
 * Copyright 2026 The Intercept Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "intercept/cli/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "intercept/io/report.h"

namespace intercept::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSource = INTERCEPT_SOURCE_DIR;

std::string Scenario(const std::string& name) {
  return kSource + "/scenarios/" + name + ".json";
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("intercept_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

// Every file under `dir` with the given extension, keyed by relative path.
std::map<std::string, std::string> Files(const fs::path& dir, const std::string& ext) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) {
      files[fs::relative(entry.path(), dir).string()] = ReadFile(entry.path());
    }
  }
  return files;
}

std::string Cell(const io::CsvTable& t, size_t row, const std::string& col) {
  return t.rows.at(row).at(t.Column(col));
}

double Num(const io::CsvTable& t, size_t row, const std::string& col) {
  return t.Number(row, t.Column(col));
}

class HelpGoldenTest : public ::testing::TestWithParam<std::string> {};

TEST_P(HelpGoldenTest, MatchesGolden) {
  const std::string sub = GetParam();
  std::vector<std::string> args;
  if (sub != "top") args.push_back(sub);
  args.push_back("--help");
  const CliRun r = Invoke(args);
  EXPECT_EQ(r.code, kExitOk);
  const std::string golden = kSource + "/tests/golden/help_" + sub + ".txt";
  if (std::getenv("INTERCEPT_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << r.out;
  }
  EXPECT_EQ(r.out, ReadFile(golden));
}

INSTANTIATE_TEST_SUITE_P(Subcommands, HelpGoldenTest,
                         ::testing::Values("top", "predict", "plan", "speed",
                                           "intercept", "bench", "plot"));

TEST(CliTest, HelpListsEveryFlag) {
  const CliRun r = Invoke({"intercept", "--help"});
  for (const char* flag : {"--seed", "--out", "--speed-planner", "--replan", "--track"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  const CliRun p = Invoke({"predict", "--help"});
  EXPECT_NE(p.out.find("--trials"), std::string::npos);
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"intercept"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"intercept", Scenario("minimal"), "--replan", "maybe"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"predict", "--trials", "0"}).code, kExitUsage);
}

TEST(CliTest, InputErrorsExitTwo) {
  const fs::path dir = FreshDir("input");
  fs::create_directories(dir);
  const CliRun missing = Invoke({"plan", (dir / "none.json").string()});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("none.json"), std::string::npos);
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"version": 1, "map": {"width": 10, "height": 10},
    "robot": {"start": [1, 1, 0], "max_speed": -2}, "target": {"x0": [5, 5, 0, 0]}})";
  const CliRun invalid = Invoke({"plan", bad.string(), "--out", (dir / "o").string()});
  EXPECT_EQ(invalid.code, kExitUsage);
  EXPECT_NE(invalid.err.find("robot.max_speed"), std::string::npos) << invalid.err;
}

TEST(CliTest, InterceptExitCodeFollowsOutcome) {
  const fs::path dir = FreshDir("outcome");
  const CliRun ok = Invoke({"intercept", Scenario("minimal"), "--out", (dir / "a").string()});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("intercepted"), std::string::npos);
  const CliRun collided = Invoke({"intercept", Scenario("fig3"), "--speed-planner", "uniform",
                               "--out", (dir / "b").string()});
  EXPECT_EQ(collided.code, kExitOutcome);
  const io::CsvTable summary = io::ReadCsv((dir / "b" / "summary.csv").string());
  ASSERT_EQ(summary.rows.size(), 1u);
  EXPECT_EQ(Cell(summary, 0, "outcome"), "collided");
}

TEST(CliTest, UnreachableGoalIsAnInfeasibleOutcome) {
  const fs::path dir = FreshDir("unreachable");
  fs::create_directories(dir);
  const fs::path walled = dir / "walled.json";
  std::ofstream(walled) << R"({"version": 1, "map": {"width": 20, "height": 20},
    "static_obstacles": [{"polygon": [[10, 0], [11, 0], [11, 20], [10, 20]]}],
    "robot": {"start": [2, 10, 0]}, "target": {"x0": [15, 10, 0, 0]}})";
  const CliRun r = Invoke({"plan", walled.string(), "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, kExitOutcome) << r.err;
}

TEST(CliTest, InterceptIsByteIdenticalForOneSeed) {
  const fs::path a = FreshDir("det_a");
  const fs::path b = FreshDir("det_b");
  ASSERT_EQ(Invoke({"intercept", Scenario("fig3"), "--seed", "7", "--out", a.string()}).code,
            Invoke({"intercept", Scenario("fig3"), "--seed", "7", "--out", b.string()}).code);
  auto fa = Files(a, ".csv");
  auto fb = Files(b, ".csv");
  fa.erase("timing.csv");
  fb.erase("timing.csv");
  ASSERT_FALSE(fa.empty());
  EXPECT_TRUE(fa.count("log.csv"));
  EXPECT_TRUE(fa.count("summary.csv"));
  EXPECT_TRUE(fa.count("st_graph.csv"));
  EXPECT_EQ(fa, fb);
  EXPECT_EQ(Files(a, ".svg"), Files(b, ".svg"));
}

TEST(CliTest, DifferentSeedChangesTheLog) {
  const fs::path a = FreshDir("seed_a");
  const fs::path b = FreshDir("seed_b");
  Invoke({"intercept", Scenario("fig3"), "--seed", "7", "--out", a.string()});
  Invoke({"intercept", Scenario("fig3"), "--seed", "8", "--out", b.string()});
  EXPECT_NE(ReadFile(a / "log.csv"), ReadFile(b / "log.csv"));
}

TEST(CliTest, PlotRerenderIsIdentical) {
  const fs::path dir = FreshDir("plot");
  ASSERT_EQ(Invoke({"speed", Scenario("fig4"), "--out", dir.string()}).code, kExitOk);
  const auto before = Files(dir, ".svg");
  ASSERT_FALSE(before.empty());
  fs::remove_all(dir / "plots");
  const CliRun r = Invoke({"plot", dir.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Files(dir, ".svg"), before);
}

TEST(CliTest, PlanWritesPathAndSummary) {
  const fs::path dir = FreshDir("plan");
  const CliRun r = Invoke({"plan", Scenario("fig3"), "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const io::CsvTable summary = io::ReadCsv((dir / "plan_summary.csv").string());
  ASSERT_EQ(summary.rows.size(), 1u);
  EXPECT_LE(Num(summary, 0, "smoothed_length"), Num(summary, 0, "coarse_length"));
  const io::CsvTable path = io::ReadCsv((dir / "path.csv").string());
  EXPECT_GT(path.rows.size(), 10u);
  EXPECT_TRUE(fs::exists(dir / "plots" / "path.svg"));
}

TEST(CliTest, SpeedComparesPlanners) {
  const fs::path dir = FreshDir("speed");
  ASSERT_EQ(Invoke({"speed", Scenario("fig4"), "--out", dir.string()}).code, kExitOk);
  const io::CsvTable summary = io::ReadCsv((dir / "speed_summary.csv").string());
  ASSERT_EQ(summary.rows.size(), 3u);
  EXPECT_EQ(Cell(summary, 0, "planner"), "optimized");
  EXPECT_EQ(Cell(summary, 1, "planner"), "uniform");
  EXPECT_EQ(Num(summary, 0, "st_hits"), 0.0);
  EXPECT_GE(Num(summary, 1, "st_hits"), 1.0);
}

TEST(CliTest, PredictWritesOneRowPerHorizon) {
  const fs::path dir = FreshDir("predict");
  const CliRun r = Invoke({"predict", "--mode", "uniform", "--trials", "20", "--horizons", "0",
                        "10", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("uniform"), std::string::npos);
  const io::CsvTable table = io::ReadCsv((dir / "predict.csv").string());
  EXPECT_EQ(table.rows.size(), 2u);
  for (size_t i = 0; i < table.rows.size(); ++i) EXPECT_EQ(Num(table, i, "trials"), 20.0);
}

TEST(CliTest, BenchPrintsEveryStage) {
  const fs::path dir = FreshDir("bench");
  const CliRun r = Invoke({"bench", Scenario("minimal"), "--repeat", "2", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* stage : {"Prediction", "Path-Planner", "Speed-Planner", "Total"}) {
    EXPECT_NE(r.out.find(stage), std::string::npos) << stage;
  }
  EXPECT_TRUE(fs::exists(dir / "timing.csv"));
}

}  // namespace
}  // namespace intercept::cli
