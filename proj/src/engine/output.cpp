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

#include <cstdio>
#include <nlohmann/json.hpp>

#include "eeval/engine.hpp"

namespace eeval {
namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json mapping_json(const MappingSpec& spec) {
  ordered_json m;
  m["direction"] = to_string(spec.direction);
  m["lower"] = spec.lower;
  m["upper"] = spec.upper;
  m["family"] = to_string(spec.family);
  m["theta"] = spec.family == MappingFamily::Simple ? ordered_json(nullptr) : ordered_json(spec.theta);
  return m;
}

ordered_json sample_json(const SampleRecord& r) {
  ordered_json s;
  s["id"] = r.id;
  s["has_ground_truth"] = r.has_ground_truth;
  ordered_json inputs = ordered_json::array();
  for (const auto& d : r.inputs) inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
  s["inputs"] = std::move(inputs);
  ordered_json metrics = ordered_json::array();
  for (const auto& m : r.metrics) {
    ordered_json e;
    e["metric"] = m.metric;
    e["status"] = to_string(m.status);
    e["raw"] = optional_number(m.raw);
    e["mapped"] = optional_number(m.mapped);
    if (!m.note.empty()) e["note"] = m.note;
    metrics.push_back(std::move(e));
  }
  s["metrics"] = std::move(metrics);
  ordered_json details = ordered_json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  s["details"] = std::move(details);
  return s;
}

std::string format_score(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

}  // namespace

std::string scorecard_json(const ScoreCard& card, const EvaluationPlan& plan, const DatasetInfo& dataset) {
  ordered_json doc;
  doc["schema_version"] = kScorecardSchemaVersion;
  doc["model"] = card.model;
  doc["dataset"] = {{"name", dataset.name}, {"version", dataset.version}};
  ordered_json weights = ordered_json::object();
  for (auto g : kGroups) {
    const auto it = plan.weights.find(std::string(g));
    weights[std::string(g)] = it == plan.weights.end() ? 1.0 : it->second;
  }
  doc["aggregation"] = {{"mode", kAggregationMode}, {"weights", std::move(weights)}, {"dtw", "dtw_normalized"}};
  doc["overall"] = optional_number(card.overall);
  ordered_json groups = ordered_json::object();
  for (auto g : kGroups) {
    const auto it = card.group_means.find(std::string(g));
    groups[std::string(g)] = it == card.group_means.end() ? ordered_json(nullptr) : ordered_json(it->second);
  }
  doc["groups"] = std::move(groups);

  ordered_json metrics = ordered_json::array();
  for (const auto& m : card.metrics) {
    const MetricInfo* info = find_metric(m.metric);
    ordered_json e;
    e["metric"] = m.metric;
    e["label"] = info->label;
    e["group"] = info->group;
    e["status"] = to_string(m.status);
    e["raw"] = optional_number(m.raw);
    e["mapped"] = optional_number(m.mapped);
    e["samples"] = m.samples;
    if (const MappingSpec* spec = plan.mappings.find(m.metric)) e["mapping"] = mapping_json(*spec);
    if (!m.note.empty()) e["note"] = m.note;
    metrics.push_back(std::move(e));
  }
  doc["metrics"] = std::move(metrics);

  ordered_json failures = ordered_json::array();
  for (const auto& f : card.failures) {
    failures.push_back({{"sample", f.sample_id}, {"metric", f.metric}, {"code", to_string(f.code)}, {"message", f.message}});
  }
  doc["errors"] = std::move(failures);

  ordered_json samples = ordered_json::array();
  for (const auto& r : card.samples) samples.push_back(sample_json(r));
  doc["samples"] = std::move(samples);
  return doc.dump(2) + "\n";
}

std::string leaderboard_csv(const std::vector<ScoreCard>& cards) {
  std::string out = "model,quality,instruction,physical,planning,overall\n";
  for (const auto& c : cards) {
    out += csv_field(c.model);
    for (auto g : kGroups) {
      const auto it = c.group_means.find(std::string(g));
      out += "," + format_score(it == c.group_means.end() ? std::nullopt : std::optional<double>(it->second));
    }
    out += "," + format_score(c.overall) + "\n";
  }
  return out;
}

std::string scorecard_filename(const std::string& model) {
  std::string stem;
  for (char c : model) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    stem += safe ? c : '_';
  }
  if (stem.empty() || stem.front() == '.') stem = "_" + stem;
  return stem + ".scorecard.json";
}

}  // namespace eeval
