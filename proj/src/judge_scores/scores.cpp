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
#include <cctype>
#include <cmath>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/judge_scores.hpp"

namespace eeval {
namespace {

bool is_three_level(double v) { return v == 0.0 || v == 0.5 || v == 1.0; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

double caption_score(const CaptionJudgment& j) {
  if (j.components.size() != CaptionJudgment::kComponents.size()) {
    fail(Errc::SchemaError, "caption judgment needs exactly the five components");
  }
  double sum = 0.0;
  for (std::string_view key : CaptionJudgment::kComponents) {
    const auto it = j.components.find(std::string(key));
    if (it == j.components.end()) fail(Errc::SchemaError, "caption judgment lacks '" + std::string(key) + "'");
    if (!is_three_level(it->second)) {
      fail(Errc::SchemaError, "caption component '" + std::string(key) + "' must be 0, 0.5 or 1");
    }
    sum += it->second;
  }
  return 100.0 * sum / 5.0;
}

SequenceExecScores sequence_exec_scores(const SequenceExecJudgment& j) {
  if (!(j.sequence_match >= 0.0 && j.sequence_match <= 1.0)) fail(Errc::SchemaError, "sequence match must be in [0, 1]");
  if (j.exec_quality.empty()) fail(Errc::SchemaError, "execution quality list is empty");
  double sum = 0.0;
  for (int q : j.exec_quality) {
    if (q < 1 || q > 5) fail(Errc::SchemaError, "execution quality scores must be in 1..5");
    sum += q;
  }
  const double mean = sum / static_cast<double>(j.exec_quality.size());
  return {100.0 * j.sequence_match, 100.0 * (mean - 1.0) / 4.0};
}

double physical_score(const PhysicalJudgment& j) {
  double sum = 0.0;
  int count = 0;
  for (const auto& [dim, score] : j.dims) {
    if (std::find(PhysicalJudgment::kDimensions.begin(), PhysicalJudgment::kDimensions.end(), dim) ==
        PhysicalJudgment::kDimensions.end()) {
      fail(Errc::SchemaError, "unknown physical dimension '" + dim + "'");
    }
    if (!score) continue;
    if (*score < 1 || *score > 5) fail(Errc::SchemaError, "physical score for '" + dim + "' must be in 1..5");
    sum += *score;
    ++count;
  }
  if (count == 0) fail(Errc::AllNull, "every physical dimension is null");
  return 100.0 * (sum / count - 1.0) / 4.0;
}

double grpo_alignment_reward(const JudgeScoreMap& out, const JudgeScoreMap& gt) {
  double sum = 0.0;
  int matched = 0;
  for (const auto& [key, gt_value] : gt) {
    const auto it = out.find(key);
    if (it == out.end() || !std::isfinite(gt_value) || !std::isfinite(it->second)) continue;
    sum += std::abs(std::clamp(gt_value, 1.0, 5.0) - std::clamp(it->second, 1.0, 5.0)) / 4.0;
    ++matched;
  }
  if (matched == 0) return 0.0;
  return std::clamp(1.0 - sum / matched, 0.0, 1.0);
}

bool nodes_match(const PlanNode& a, const PlanNode& b, const NodeMatchOptions& opts) {
  if (lower(a.skill) != lower(b.skill) || lower(a.object) != lower(b.object)) return false;
  if (!opts.strict_args) return true;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (lower(a.args[i]) != lower(b.args[i])) return false;
  }
  return true;
}

double dag_node_correctness(const PlanDag& pred, const PlanDag& gt, const NodeMatchOptions& opts) {
  if (gt.nodes.empty()) fail(Errc::EmptyGroundTruth, "reference plan has no nodes");
  const std::size_t n = pred.nodes.size();
  const std::size_t m = gt.nodes.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = nodes_match(pred.nodes[i - 1], gt.nodes[j - 1], opts) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(m);
}

double long_horizon_score(double node_correctness, double task_completion) {
  if (!(node_correctness >= 0.0 && node_correctness <= 1.0) || !(task_completion >= 0.0 && task_completion <= 1.0)) {
    fail(Errc::OutOfRange, "node correctness and task completion must be in [0, 1]");
  }
  return (node_correctness + task_completion) * 50.0;
}

void PlanDag::validate() const {
  const std::size_t n = nodes.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& [from, to] : edges) {
    if (from >= n || to >= n) fail(Errc::SchemaError, "plan edge references a missing node");
    out[from].push_back(to);
    ++indegree[to];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++visited;
    for (std::size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (visited != n) fail(Errc::SchemaError, "plan edges contain a cycle");
}

}  // namespace eeval
