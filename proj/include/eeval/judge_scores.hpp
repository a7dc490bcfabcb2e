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

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlohmann/json_fwd.hpp"

namespace eeval {

/// Caption comparison: each component scored 0, 0.5 or 1.
struct CaptionJudgment {
  static constexpr std::array<std::string_view, 5> kComponents = {"initial_state", "processing_state", "final_state",
                                                                   "action", "object"};
  std::map<std::string, double> components;
};

struct SequenceExecJudgment {
  double sequence_match = 0.0;         ///< in [0, 1]
  std::vector<int> exec_quality;       ///< one 1..5 score per action-object pair
};

struct PhysicalJudgment {
  static constexpr std::array<std::string_view, 6> kDimensions = {
      "object_interaction",       "physical_properties", "temporal_consistency",
      "lighting_and_reflections", "fluids_and_particles", "local_anomalies"};
  std::map<std::string, std::optional<int>> dims;
};

struct PlanNode {
  std::string skill;
  std::string object;
  std::vector<std::string> args;
};

struct PlanDag {
  std::vector<PlanNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws SchemaError for out-of-range indices or a cycle.
  void validate() const;
};

/// Planning judge output: predicted and reference plans plus the judge's
/// task-completion fraction.
struct PlanningJudgment {
  PlanDag predicted;
  PlanDag ground_truth;
  double task_completion = 0.0;
};

double caption_score(const CaptionJudgment& j);

struct SequenceExecScores {
  double sequence = 0.0;
  double execution = 0.0;
};
SequenceExecScores sequence_exec_scores(const SequenceExecJudgment& j);

double physical_score(const PhysicalJudgment& j);

using JudgeScoreMap = std::map<std::string, double>;

/// Training reward comparing a judge's score map to a reference over shared keys.
/// Scores are clipped to [1, 5]. Returns 0 when no key is shared.
double grpo_alignment_reward(const JudgeScoreMap& out, const JudgeScoreMap& gt);

/// Text form over the four rubric keys; unparseable input yields 0.
double grpo_alignment_reward(std::string_view out_json, std::string_view gt_json);

struct NodeMatchOptions {
  bool strict_args = false;
};
bool nodes_match(const PlanNode& a, const PlanNode& b, const NodeMatchOptions& opts = {});

/// Longest order-preserving match between node lists over |gt|.
double dag_node_correctness(const PlanDag& pred, const PlanDag& gt, const NodeMatchOptions& opts = {});

/// (correctness + completion) * 50.
double long_horizon_score(double node_correctness, double task_completion);

// Judge file readers. Each validates the schema and throws SchemaError on drift.
CaptionJudgment parse_caption_judgment(const nlohmann::json& doc);
SequenceExecJudgment parse_sequence_exec_judgment(const nlohmann::json& doc);
PhysicalJudgment parse_physical_judgment(const nlohmann::json& doc);
PlanningJudgment parse_planning_judgment(const nlohmann::json& doc);

CaptionJudgment read_caption_judgment(const std::filesystem::path& path);
SequenceExecJudgment read_sequence_exec_judgment(const std::filesystem::path& path);
PhysicalJudgment read_physical_judgment(const std::filesystem::path& path);
PlanningJudgment read_planning_judgment(const std::filesystem::path& path);

}  // namespace eeval
