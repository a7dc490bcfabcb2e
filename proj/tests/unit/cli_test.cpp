/*
 * Copyright 2026 The eeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "eeval/core/io.hpp"
#include "eeval/engine.hpp"
#include "eeval/scoring_calibration.hpp"

namespace eeval::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = EEVAL_FIXTURE_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("eeval_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "eeval");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
  }

  Options report_options() const {
    Options o;
    o.scorecards = (kFixtures / "report" / "scorecards").string();
    o.human = (kFixtures / "report" / "ratings.csv").string();
    o.out = (dir_ / "report").string();
    return o;
  }

  Options calibrate_options() const {
    Options o;
    o.values = (kFixtures / "calibration" / "values.csv").string();
    o.human = (kFixtures / "calibration" / "ratings.csv").string();
    o.out = (dir_ / "cal").string();
    return o;
  }

  fs::path dir_;
  std::ostringstream log_;
};

std::map<std::string, std::string> read_key_values(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::string> out;
  while (std::getline(in, line)) {
    const auto row = split_csv_line(line);
    out[row.at(0)] = row.at(1);
  }
  return out;
}

TEST_F(CliTest, EvaluateWritesScorecardsAndLeaderboard) {
  Options o;
  o.manifest = (kFixtures / "synthetic" / "manifest.json").string();
  o.out = dir_.string();
  EXPECT_EQ(cmd_evaluate(o, log_), kOk) << log_.str();
  EXPECT_TRUE(fs::exists(dir_ / "model_a.scorecard.json"));
  EXPECT_TRUE(fs::exists(dir_ / "model_b.scorecard.json"));
  EXPECT_TRUE(fs::exists(dir_ / "leaderboard.csv"));
}

TEST_F(CliTest, EvaluateReportsMetricErrors) {
  Options o;
  o.manifest = (kFixtures / "synthetic" / "manifest_corrupt.json").string();
  o.out = dir_.string();
  EXPECT_EQ(cmd_evaluate(o, log_), kMetricErrors);
  const std::string log = log_.str();
  EXPECT_NE(log.find("model_b_task2"), std::string::npos) << log;
  EXPECT_NE(log.find("dino"), std::string::npos) << log;
  EXPECT_TRUE(fs::exists(dir_ / "model_b.scorecard.json"));
}

TEST_F(CliTest, MissingMappingsFileIsAConfigError) {
  Options o;
  o.manifest = (kFixtures / "synthetic" / "manifest.json").string();
  o.mappings = (dir_ / "absent_mappings.json").string();
  o.out = dir_.string();
  EXPECT_EQ(cmd_evaluate(o, log_), kConfigError);
  EXPECT_NE(log_.str().find("absent_mappings.json"), std::string::npos) << log_.str();
}

TEST_F(CliTest, ArgumentErrors) {
  EXPECT_EQ(run_args({"evaluate"}), kConfigError);
  EXPECT_EQ(run_args({}), kConfigError);
  EXPECT_EQ(run_args({"evaluate", "--bogus"}), kConfigError);
  EXPECT_EQ(run_args({"calibrate", "--values", "v.csv", "--human", "h.csv", "--grid-step", "0"}), kConfigError);
  EXPECT_EQ(run_args({"evaluate", "--manifest", (kFixtures / "synthetic" / "manifest.json").string(), "--jobs", "0",
                      "--out", dir_.string()}),
            kConfigError);
}

TEST_F(CliTest, HelpListsDefaults) {
  ::testing::internal::CaptureStdout();
  EXPECT_EQ(run_args({"--help"}), kOk);
  const std::string help = ::testing::internal::GetCapturedStdout();
  for (auto text : {"--grid-step", "0.01", "--folds", "--out", "eeval_out", "--jobs", "evaluate", "calibrate", "report",
                    "correlate", "validate"}) {
    EXPECT_NE(help.find(text), std::string::npos) << text;
  }
}

TEST_F(CliTest, ReportMatchesLibraryCorrelations) {
  const Options o = report_options();
  ASSERT_EQ(cmd_report(o, log_), kOk) << log_.str();

  std::vector<double> overall, human;
  const auto means = mean_ratings(read_human_ratings(o.human));
  for (const auto& entry : fs::directory_iterator(o.scorecards)) {
    const auto doc = read_json_file(entry.path());
    const std::string model = doc["model"].get<std::string>();
    overall.push_back(doc["overall"].get<double>());
    human.push_back(means.at(model));
  }
  const Correlation expected = correlations(overall, human);
  const auto stats = read_key_values(fs::path(o.out) / "correlation.csv");
  EXPECT_EQ(stats.at("n"), "8");
  EXPECT_NEAR(std::stod(stats.at("pearson_r")), expected.pearson, 1e-12);
  EXPECT_NEAR(std::stod(stats.at("spearman_rho")), expected.spearman, 1e-12);

  std::ifstream svg(fs::path(o.out) / "scatter.svg");
  const std::string body((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  EXPECT_NE(body.find("<svg"), std::string::npos);
  EXPECT_NE(body.find("model_a"), std::string::npos);
  EXPECT_FALSE(fs::exists(fs::path(o.out) / "deceive_ratio.csv"));
}

TEST_F(CliTest, ReportJsonAndDeceiveTable) {
  Options o = report_options();
  o.format = "json";
  o.afc_log = (kFixtures / "report" / "afc_log.csv").string();
  ASSERT_EQ(cmd_report(o, log_), kOk) << log_.str();
  const auto report = read_json_file(fs::path(o.out) / "report.json");
  EXPECT_EQ(report["points"].size(), 8u);
  const auto deceive = read_json_file(fs::path(o.out) / "deceive_ratio.json");
  const auto expected = deceive_ratio(read_afc_log(o.afc_log));
  ASSERT_FALSE(deceive.empty());
  EXPECT_EQ(deceive.dump().find("model_h") != std::string::npos, expected.contains("model_h"));
}

TEST_F(CliTest, ReportNeedsThreeRatedModels) {
  const fs::path cards = dir_ / "two";
  fs::create_directories(cards);
  for (auto name : {"model_a.scorecard.json", "model_b.scorecard.json"}) {
    fs::copy_file(kFixtures / "report" / "scorecards" / name, cards / name);
  }
  Options o = report_options();
  o.scorecards = cards.string();
  EXPECT_EQ(cmd_report(o, log_), kConfigError);
}

TEST_F(CliTest, CalibrateRecoversGammaAndIsIdempotent) {
  const Options o = calibrate_options();
  ASSERT_EQ(cmd_calibrate(o, log_), kOk) << log_.str();
  const fs::path out = fs::path(o.out) / "mappings.json";
  const MappingTable table = read_mappings_file(out);
  EXPECT_GE(table.at("dino").theta, 1.9);
  EXPECT_LE(table.at("dino").theta, 2.1);
  EXPECT_EQ(table.at("dino").family, MappingFamily::Gamma);
  const std::string first = read_text_file(out);
  ASSERT_EQ(cmd_calibrate(o, log_), kOk);
  EXPECT_EQ(read_text_file(out), first);
}

TEST_F(CliTest, CalibrateRejectsUnknownIds) {
  Options o = calibrate_options();
  const fs::path ratings = dir_ / "ratings.csv";
  write_file_atomic(ratings, "model_or_sample_id,rating,rater_id\nghost,3,r1\n");
  o.human = ratings.string();
  EXPECT_EQ(cmd_calibrate(o, log_), kConfigError);
}

TEST_F(CliTest, CalibrateRejectsSimpleFamily) {
  Options o = calibrate_options();
  o.family = "simple";
  EXPECT_EQ(cmd_calibrate(o, log_), kConfigError);
  o.family = "cubic";
  EXPECT_EQ(cmd_calibrate(o, log_), kConfigError);
}

TEST_F(CliTest, ValidateChecksEveryFile) {
  Options o;
  o.manifest = (kFixtures / "synthetic" / "manifest.json").string();
  EXPECT_EQ(cmd_validate(o, log_), kOk) << log_.str();
  o.manifest = (kFixtures / "synthetic" / "manifest_corrupt.json").string();
  EXPECT_EQ(cmd_validate(o, log_), kMetricErrors);
  EXPECT_NE(log_.str().find("gen_global_truncated.wweb"), std::string::npos) << log_.str();
}

TEST_F(CliTest, CorrelateWritesPerMetricTable) {
  Options o = calibrate_options();
  ASSERT_EQ(cmd_correlate(o, log_), kOk) << log_.str();
  const auto table = read_key_values(fs::path(o.out) / "correlations.csv");
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table.at("dino"), "200");
  o.values.clear();
  EXPECT_EQ(cmd_correlate(o, log_), kConfigError);
}

TEST(ScatterSvg, RendersPointsAndCaption) {
  const std::string svg = scatter_svg("t", "x", "y", {"p<1>", "q", "r"}, {1, 2, 3}, {1, 3, 2}, 0.5, 0.5);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("p&lt;1&gt;"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace eeval::cli
