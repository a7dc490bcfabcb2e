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

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "eeval/core/error.hpp"
#include "eeval/judge_scores.hpp"
#include "support/error_code.hpp"
#include "support/test_rng.hpp"

namespace eeval {
namespace {

using nlohmann::json;
using testing::code_of;
using testing::TestRng;

CaptionJudgment caption(std::array<double, 5> v) {
  CaptionJudgment j;
  for (std::size_t i = 0; i < 5; ++i) j.components[std::string(CaptionJudgment::kComponents[i])] = v[i];
  return j;
}

PhysicalJudgment physical(std::array<std::optional<int>, 6> v) {
  PhysicalJudgment j;
  for (std::size_t i = 0; i < 6; ++i) j.dims[std::string(PhysicalJudgment::kDimensions[i])] = v[i];
  return j;
}

PlanDag dag(std::vector<std::pair<std::string, std::string>> nodes) {
  PlanDag d;
  for (auto& [s, o] : nodes) d.nodes.push_back({s, o, {}});
  return d;
}

TEST(CaptionScore, Examples) {
  EXPECT_EQ(caption_score(caption({1, 1, 1, 1, 1})), 100.0);
  EXPECT_DOUBLE_EQ(caption_score(caption({1, 1, 0.5, 0, 1})), 70.0);
  auto missing = caption({1, 1, 1, 1, 1});
  missing.components.erase("action");
  EXPECT_EQ(code_of([&] { caption_score(missing); }), Errc::SchemaError);
  EXPECT_EQ(code_of([&] { caption_score(caption({1, 1, 0.7, 1, 1})); }), Errc::SchemaError);
}

TEST(SequenceExec, Examples) {
  auto s = sequence_exec_scores({1.0, {5, 5, 5}});
  EXPECT_EQ(s.sequence, 100.0);
  EXPECT_EQ(s.execution, 100.0);
  s = sequence_exec_scores({0.5, {3}});
  EXPECT_EQ(s.sequence, 50.0);
  EXPECT_EQ(s.execution, 50.0);
  EXPECT_EQ(sequence_exec_scores({0.0, {1, 5}}).execution, 50.0);
  EXPECT_EQ(code_of([] { sequence_exec_scores({0.5, {}}); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { sequence_exec_scores({1.5, {3}}); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { sequence_exec_scores({0.5, {6}}); }), Errc::SchemaError);
}

TEST(PhysicalScore, Examples) {
  EXPECT_EQ(physical_score(physical({5, 5, 5, 5, 5, 5})), 100.0);
  EXPECT_EQ(physical_score(physical({3, 3, std::nullopt, std::nullopt, std::nullopt, std::nullopt})), 50.0);
  EXPECT_EQ(code_of([] { physical_score(physical({})); }), Errc::AllNull);
}

TEST(GrpoReward, Examples) {
  const JudgeScoreMap gt{{"a", 5}, {"b", 3}};
  EXPECT_EQ(grpo_alignment_reward(gt, gt), 1.0);
  EXPECT_EQ(grpo_alignment_reward(JudgeScoreMap{{"a", 1}, {"b", 1}}, JudgeScoreMap{{"a", 5}, {"b", 5}}), 0.0);
  EXPECT_EQ(grpo_alignment_reward(JudgeScoreMap{{"a", 4}, {"b", 3}}, gt), 0.875);
  EXPECT_EQ(grpo_alignment_reward(JudgeScoreMap{{"c", 4}}, gt), 0.0);
  // Out-of-range scores are clipped before comparing.
  EXPECT_EQ(grpo_alignment_reward(JudgeScoreMap{{"a", 9}}, JudgeScoreMap{{"a", 5}}), 1.0);
}

TEST(GrpoReward, TextForm) {
  const std::string gt = R"({"video_quality": 5, "instruction_following": 3, "physical_consistency": 4, "planning_logic": 2})";
  EXPECT_EQ(grpo_alignment_reward(gt, gt), 1.0);
  EXPECT_EQ(grpo_alignment_reward("not json", gt), 0.0);
  EXPECT_EQ(grpo_alignment_reward(R"({"other": 5})", gt), 0.0);
  EXPECT_EQ(grpo_alignment_reward(R"({"video_quality": 4})", gt), 0.75);
}

TEST(GrpoReward, SymmetricAndSelfIdentical) {
  TestRng rng(21);
  const std::array<std::string, 4> keys{"video_quality", "instruction_following", "physical_consistency",
                                        "planning_logic"};
  for (int trial = 0; trial < 500; ++trial) {
    JudgeScoreMap a, b;
    for (const auto& k : keys) {
      if (rng.coin()) a[k] = rng.uniform(0, 6);
      if (rng.coin()) b[k] = rng.uniform(0, 6);
    }
    const double r = grpo_alignment_reward(a, b);
    EXPECT_EQ(r, grpo_alignment_reward(b, a));
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    if (!a.empty()) {
      EXPECT_EQ(grpo_alignment_reward(a, a), 1.0);
    }
  }
}

TEST(NodeMatch, CaseInsensitiveArgsOptional) {
  const PlanNode a{"Grasp", "Cup", {"left"}};
  const PlanNode b{"grasp", "cup", {"right"}};
  EXPECT_TRUE(nodes_match(a, b));
  EXPECT_FALSE(nodes_match(a, b, {true}));
  EXPECT_TRUE(nodes_match(a, {"GRASP", "CUP", {"LEFT"}}, {true}));
  EXPECT_FALSE(nodes_match(a, {"grasp", "plate", {}}));
}

TEST(DagNodeCorrectness, Examples) {
  const PlanDag gt = dag({{"reach", "cup"}, {"grasp", "cup"}, {"lift", "cup"}, {"place", "cup"}});
  EXPECT_EQ(dag_node_correctness(gt, gt), 1.0);
  EXPECT_EQ(dag_node_correctness(PlanDag{}, gt), 0.0);
  const PlanDag pred = dag({{"grasp", "cup"}, {"push", "box"}, {"place", "cup"}, {"reach", "cup"}});
  EXPECT_EQ(dag_node_correctness(pred, gt), 0.5);
  EXPECT_EQ(code_of([&] { dag_node_correctness(gt, PlanDag{}); }), Errc::EmptyGroundTruth);
}

std::size_t brute_force_lcs(const PlanDag& a, const PlanDag& b) {
  // Every subsequence of a, checked as a subsequence of b.
  std::size_t best = 0;
  const std::size_t n = a.nodes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t j = 0, len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      while (j < b.nodes.size() && !nodes_match(a.nodes[i], b.nodes[j])) ++j;
      if (j == b.nodes.size()) ok = false;
      ++j;
      ++len;
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

TEST(DagNodeCorrectness, MatchesBruteForceLcs) {
  TestRng rng(22);
  const std::array<std::string, 3> skills{"reach", "grasp", "place"};
  for (int trial = 0; trial < 300; ++trial) {
    PlanDag a, b;
    for (int i = rng.integer(0, 6); i > 0; --i) a.nodes.push_back({skills[rng.integer(0, 2)], "cup", {}});
    for (int i = rng.integer(1, 6); i > 0; --i) b.nodes.push_back({skills[rng.integer(0, 2)], "cup", {}});
    const double expected = static_cast<double>(brute_force_lcs(a, b)) / static_cast<double>(b.nodes.size());
    EXPECT_EQ(dag_node_correctness(a, b), expected);
    // Appending unrelated nodes to the prediction never changes the match.
    PlanDag padded = a;
    padded.nodes.insert(padded.nodes.begin() + static_cast<long>(rng.integer(0, static_cast<int>(a.nodes.size()))),
                        PlanNode{"wave", "hand", {}});
    EXPECT_EQ(dag_node_correctness(padded, b), expected);
  }
}

TEST(LongHorizon, Examples) {
  EXPECT_EQ(long_horizon_score(1, 1), 100.0);
  EXPECT_EQ(long_horizon_score(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(long_horizon_score(0.5, 0.2), 35.0);
  EXPECT_EQ(code_of([] { long_horizon_score(1.1, 0); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { long_horizon_score(0, -0.1); }), Errc::OutOfRange);
}

TEST(Monotonicity, EveryScoreFunction) {
  TestRng rng(23);
  const std::array<double, 3> levels{0, 0.5, 1};
  for (int probe = 0; probe < 1000; ++probe) {
    std::array<double, 5> c;
    for (auto& v : c) v = levels[rng.integer(0, 2)];
    auto up = c;
    const int k = rng.integer(0, 4);
    up[k] = std::min(1.0, up[k] + 0.5);
    EXPECT_LE(caption_score(caption(c)), caption_score(caption(up)));

    std::vector<int> exec(static_cast<std::size_t>(rng.integer(1, 5)));
    for (auto& q : exec) q = rng.integer(1, 5);
    const double sm = rng.uniform();
    auto exec_up = exec;
    auto& bump = exec_up[static_cast<std::size_t>(rng.integer(0, static_cast<int>(exec.size()) - 1))];
    bump = std::min(5, bump + 1);
    const auto base = sequence_exec_scores({sm, exec});
    const auto higher = sequence_exec_scores({std::min(1.0, sm + rng.uniform(0, 0.5)), exec_up});
    EXPECT_LE(base.sequence, higher.sequence);
    EXPECT_LE(base.execution, higher.execution);

    std::array<std::optional<int>, 6> p;
    for (auto& v : p) v = rng.integer(1, 5);
    auto p_up = p;
    auto& d = p_up[static_cast<std::size_t>(rng.integer(0, 5))];
    d = std::min(5, *d + 1);
    EXPECT_LE(physical_score(physical(p)), physical_score(physical(p_up)));

    const double nc = rng.uniform(), tc = rng.uniform();
    const double lh = long_horizon_score(nc, tc);
    EXPECT_GE(lh, 0.0);
    EXPECT_LE(lh, 100.0);
    EXPECT_LE(lh, long_horizon_score(std::min(1.0, nc + rng.uniform(0, 0.3)), tc));
    EXPECT_LE(lh, long_horizon_score(nc, std::min(1.0, tc + rng.uniform(0, 0.3))));

    const double g = rng.uniform(1, 5), o = rng.uniform(1, 5);
    const double closer = o + (g - o) * rng.uniform();
    EXPECT_LE(grpo_alignment_reward(JudgeScoreMap{{"k", o}}, JudgeScoreMap{{"k", g}}),
              grpo_alignment_reward(JudgeScoreMap{{"k", closer}}, JudgeScoreMap{{"k", g}}) + 1e-15);
  }
}

TEST(PlanDagValidate, Errors) {
  PlanDag d = dag({{"a", "x"}, {"b", "x"}, {"c", "x"}});
  d.edges = {{0, 1}, {1, 2}};
  EXPECT_NO_THROW(d.validate());
  d.edges.push_back({2, 0});
  EXPECT_EQ(code_of([&] { d.validate(); }), Errc::SchemaError);
  d.edges = {{0, 3}};
  EXPECT_EQ(code_of([&] { d.validate(); }), Errc::SchemaError);
}

TEST(ParseCaption, AcceptedForms) {
  const auto j = parse_caption_judgment(json::parse(R"({
    "initial_state": "Score = 1 - Reason: matches",
    "processing_state": {"score": 0.5},
    "final_state": 0,
    "action": "Score = [0.5] - Reason: partial",
    "object": 1,
    "overall": 0.6})"));
  EXPECT_DOUBLE_EQ(caption_score(j), 60.0);
  EXPECT_EQ(code_of([] { parse_caption_judgment(json::parse(R"({"initial_state": 1})")); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] {
              parse_caption_judgment(json::parse(
                  R"({"initial_state":1,"processing_state":1,"final_state":1,"action":1,"object":1,"extra":1})"));
            }),
            Errc::SchemaError);
  EXPECT_EQ(code_of([] {
              parse_caption_judgment(
                  json::parse(R"({"initial_state":1,"processing_state":1,"final_state":1,"action":3,"object":1})"));
            }),
            Errc::SchemaError);
}

TEST(ParseSequenceExec, Cases) {
  const auto j = parse_sequence_exec_judgment(json::parse(R"({
    "instruction_sequence": ["reach cup", "grasp cup"],
    "video_sequence": ["reach cup"],
    "sequence_match_score": 0.5,
    "execution_quality": [4, {"score": 2}]})"));
  EXPECT_EQ(j.sequence_match, 0.5);
  EXPECT_EQ(j.exec_quality, (std::vector<int>{4, 2}));
  EXPECT_EQ(code_of([] {
              parse_sequence_exec_judgment(json::parse(R"({"sequence_match_score": 0.5, "execution_quality": [3.5]})"));
            }),
            Errc::SchemaError);
  EXPECT_EQ(code_of([] { parse_sequence_exec_judgment(json::parse(R"({"execution_quality": [3]})")); }),
            Errc::SchemaError);
}

TEST(ParsePhysical, Cases) {
  const auto j = parse_physical_judgment(json::parse(R"({
    "object_interaction": {"score": 4, "comment": "ok"},
    "physical_properties": 2,
    "temporal_consistency": null,
    "lighting_and_reflections": {"score": null, "comment": "n/a"},
    "fluids_and_particles": null,
    "local_anomalies": 3})"));
  EXPECT_EQ(j.dims.at("object_interaction"), 4);
  EXPECT_FALSE(j.dims.at("lighting_and_reflections").has_value());
  EXPECT_DOUBLE_EQ(physical_score(j), 100.0 * (3.0 - 1.0) / 4.0);
  EXPECT_EQ(code_of([] { parse_physical_judgment(json::parse(R"({"object_interaction": 3})")); }), Errc::SchemaError);
  EXPECT_EQ(code_of([] { parse_physical_judgment(json::parse(R"({"gravity": 3})")); }), Errc::SchemaError);
}

TEST(ParsePlanning, Cases) {
  const auto j = parse_planning_judgment(json::parse(R"({
    "predicted_dag": {"nodes": [{"skill": "reach", "object": "cup"}, {"skill": "grasp", "object": "cup", "args": ["top"]}],
                      "edges": [[0, 1]]},
    "ground_truth_dag": {"nodes": [{"skill": "reach", "object": "cup", "args": []}], "edges": []},
    "task_completion": 0.25})"));
  EXPECT_EQ(j.predicted.nodes.size(), 2u);
  EXPECT_EQ(j.predicted.nodes[1].args, (std::vector<std::string>{"top"}));
  EXPECT_EQ(j.task_completion, 0.25);
  EXPECT_EQ(code_of([] {
              parse_planning_judgment(json::parse(R"({
                "predicted_dag": {"nodes": [{"skill": "a", "object": "x"}], "edges": [[0, 0]]},
                "ground_truth_dag": {"nodes": [{"skill": "a", "object": "x"}]},
                "task_completion": 1})"));
            }),
            Errc::SchemaError);
  EXPECT_EQ(code_of([] {
              parse_planning_judgment(json::parse(R"({
                "predicted_dag": {"nodes": []}, "ground_truth_dag": {"nodes": []}, "task_completion": 2})"));
            }),
            Errc::SchemaError);
}

TEST(ReadJudgeFiles, FixtureFilesParse) {
  const std::filesystem::path dir = std::filesystem::path(EEVAL_FIXTURE_DIR) / "synthetic" / "model_a_task1";
  EXPECT_NO_THROW(caption_score(read_caption_judgment(dir / "caption.json")));
  EXPECT_NO_THROW(sequence_exec_scores(read_sequence_exec_judgment(dir / "sequence_exec.json")));
  EXPECT_NO_THROW(physical_score(read_physical_judgment(dir / "physical.json")));
  const auto plan = read_planning_judgment(dir / "planning.json");
  EXPECT_FALSE(plan.ground_truth.nodes.empty());
}

TEST(ReadJudgeFiles, ErrorsNameThePath) {
  const auto path = std::filesystem::temp_directory_path() / "eeval_bad_caption.json";
  {
    std::ofstream(path) << R"({"initial_state": 1})";
  }
  try {
    read_caption_judgment(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SchemaError);
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace eeval
