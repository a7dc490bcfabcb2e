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

#include <algorithm>
#include <array>
#include <cmath>
#include <nlohmann/json.hpp>
#include <regex>
#include <set>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"
#include "eeval/judge_scores.hpp"

namespace eeval {
namespace {

using nlohmann::json;

const std::array<std::string_view, 4> kRewardKeys = {"video_quality", "instruction_following", "physical_consistency",
                                                     "planning_logic"};

void require_object(const json& doc, const char* what) {
  if (!doc.is_object()) fail(Errc::SchemaError, std::string(what) + " judgment must be a JSON object");
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> allowed, const char* what) {
  for (const auto& [key, _] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(Errc::SchemaError, std::string(what) + " judgment has unexpected key '" + key + "'");
    }
  }
}

/// Accepts a bare number or the prompt's "Score = X - Reason: ..." string.
double score_value(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.contains("score") && v["score"].is_number()) return v["score"].get<double>();
  if (v.is_string()) {
    static const std::regex kScore(R"(^\s*Score\s*=\s*\[?\s*([0-9]*\.?[0-9]+)\s*\]?)");
    std::smatch m;
    const std::string s = v.get<std::string>();
    if (std::regex_search(s, m, kScore)) return std::stod(m[1].str());
  }
  fail(Errc::SchemaError, "cannot read a score for '" + key + "'");
}

std::vector<std::string> string_list(const json& v, const char* what) {
  if (!v.is_array()) fail(Errc::SchemaError, std::string(what) + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) fail(Errc::SchemaError, std::string(what) + " must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

PlanDag parse_dag(const json& doc, const char* what) {
  if (!doc.is_object()) fail(Errc::SchemaError, std::string(what) + " must be an object");
  reject_unknown(doc, {"nodes", "edges"}, what);
  PlanDag dag;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) fail(Errc::SchemaError, std::string(what) + ".nodes missing");
  for (const auto& n : doc["nodes"]) {
    if (!n.is_object() || !n.contains("skill") || !n.contains("object") || !n["skill"].is_string() ||
        !n["object"].is_string()) {
      fail(Errc::SchemaError, std::string(what) + ": nodes need string 'skill' and 'object'");
    }
    reject_unknown(n, {"skill", "object", "args"}, what);
    PlanNode node{n["skill"].get<std::string>(), n["object"].get<std::string>(), {}};
    if (n.contains("args")) node.args = string_list(n["args"], "args");
    dag.nodes.push_back(std::move(node));
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) fail(Errc::SchemaError, std::string(what) + ".edges must be a list");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        fail(Errc::SchemaError, std::string(what) + ": edges are [from, to] index pairs");
      }
      dag.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  dag.validate();
  return dag;
}

template <typename Parser>
auto read_with(const std::filesystem::path& path, Parser parse) {
  const json doc = read_json_file(path);
  try {
    return parse(doc);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.message());
  }
}

}  // namespace

CaptionJudgment parse_caption_judgment(const json& doc) {
  require_object(doc, "caption");
  reject_unknown(doc, {"initial_state", "processing_state", "final_state", "action", "object", "overall"}, "caption");
  CaptionJudgment j;
  for (std::string_view key : CaptionJudgment::kComponents) {
    const std::string k(key);
    if (!doc.contains(k)) fail(Errc::SchemaError, "caption judgment lacks '" + k + "'");
    const double v = score_value(doc[k], k);
    if (v != 0.0 && v != 0.5 && v != 1.0) fail(Errc::SchemaError, "caption component '" + k + "' must be 0, 0.5 or 1");
    j.components[k] = v;
  }
  return j;
}

SequenceExecJudgment parse_sequence_exec_judgment(const json& doc) {
  require_object(doc, "sequence/execution");
  reject_unknown(doc, {"instruction_sequence", "video_sequence", "sequence_match_score", "execution_quality"},
                 "sequence/execution");
  SequenceExecJudgment j;
  if (!doc.contains("sequence_match_score")) fail(Errc::SchemaError, "missing 'sequence_match_score'");
  j.sequence_match = score_value(doc["sequence_match_score"], "sequence_match_score");
  if (!(j.sequence_match >= 0.0 && j.sequence_match <= 1.0)) fail(Errc::SchemaError, "sequence match must be in [0, 1]");
  if (!doc.contains("execution_quality") || !doc["execution_quality"].is_array() || doc["execution_quality"].empty()) {
    fail(Errc::SchemaError, "'execution_quality' must be a non-empty list");
  }
  for (const auto& e : doc["execution_quality"]) {
    const double v = score_value(e, "execution_quality");
    if (v != std::floor(v) || v < 1 || v > 5) fail(Errc::SchemaError, "execution quality scores must be integers 1..5");
    j.exec_quality.push_back(static_cast<int>(v));
  }
  return j;
}

PhysicalJudgment parse_physical_judgment(const json& doc) {
  require_object(doc, "physical");
  PhysicalJudgment j;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(PhysicalJudgment::kDimensions.begin(), PhysicalJudgment::kDimensions.end(), key) ==
        PhysicalJudgment::kDimensions.end()) {
      fail(Errc::SchemaError, "physical judgment has unexpected key '" + key + "'");
    }
    const json* score = &value;
    if (value.is_object()) {
      reject_unknown(value, {"score", "comment"}, "physical");
      if (!value.contains("score")) fail(Errc::SchemaError, "'" + key + "' lacks a score");
      score = &value["score"];
    }
    if (score->is_null()) {
      j.dims[key] = std::nullopt;
      continue;
    }
    if (!score->is_number_integer()) fail(Errc::SchemaError, "'" + key + "' score must be an integer or null");
    const int v = score->get<int>();
    if (v < 1 || v > 5) fail(Errc::SchemaError, "'" + key + "' score must be in 1..5");
    j.dims[key] = v;
  }
  for (std::string_view key : PhysicalJudgment::kDimensions) {
    if (!j.dims.contains(std::string(key))) fail(Errc::SchemaError, "physical judgment lacks '" + std::string(key) + "'");
  }
  return j;
}

PlanningJudgment parse_planning_judgment(const json& doc) {
  require_object(doc, "planning");
  reject_unknown(doc, {"predicted_dag", "ground_truth_dag", "task_completion"}, "planning");
  for (const char* key : {"predicted_dag", "ground_truth_dag", "task_completion"}) {
    if (!doc.contains(key)) fail(Errc::SchemaError, std::string("planning judgment lacks '") + key + "'");
  }
  PlanningJudgment j;
  j.predicted = parse_dag(doc["predicted_dag"], "predicted_dag");
  j.ground_truth = parse_dag(doc["ground_truth_dag"], "ground_truth_dag");
  if (!doc["task_completion"].is_number()) fail(Errc::SchemaError, "task_completion must be a number");
  j.task_completion = doc["task_completion"].get<double>();
  if (!(j.task_completion >= 0.0 && j.task_completion <= 1.0)) fail(Errc::SchemaError, "task_completion must be in [0, 1]");
  return j;
}

CaptionJudgment read_caption_judgment(const std::filesystem::path& path) {
  return read_with(path, [](const json& d) { return parse_caption_judgment(d); });
}
SequenceExecJudgment read_sequence_exec_judgment(const std::filesystem::path& path) {
  return read_with(path, [](const json& d) { return parse_sequence_exec_judgment(d); });
}
PhysicalJudgment read_physical_judgment(const std::filesystem::path& path) {
  return read_with(path, [](const json& d) { return parse_physical_judgment(d); });
}
PlanningJudgment read_planning_judgment(const std::filesystem::path& path) {
  return read_with(path, [](const json& d) { return parse_planning_judgment(d); });
}

double grpo_alignment_reward(std::string_view out_json, std::string_view gt_json) {
  const json out = json::parse(out_json, nullptr, false);
  const json gt = json::parse(gt_json, nullptr, false);
  if (out.is_discarded() || gt.is_discarded() || !out.is_object() || !gt.is_object()) return 0.0;
  JudgeScoreMap out_map, gt_map;
  for (std::string_view key : kRewardKeys) {
    const std::string k(key);
    if (out.contains(k) && out[k].is_number()) out_map[k] = out[k].get<double>();
    if (gt.contains(k) && gt[k].is_number()) gt_map[k] = gt[k].get<double>();
  }
  return grpo_alignment_reward(out_map, gt_map);
}

}  // namespace eeval
