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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eeval/camera_motion.hpp"
#include "eeval/core/embedding.hpp"
#include "eeval/core/error.hpp"
#include "eeval/core/manifest.hpp"
#include "eeval/judge_scores.hpp"
#include "eeval/scoring_calibration.hpp"

namespace eeval {

inline constexpr int kScorecardSchemaVersion = 1;
inline constexpr const char* kAggregationMode = "mean_raw_then_map";

struct EvaluationPlan {
  std::vector<std::string> metrics_enabled;  ///< catalog names; empty means all
  MappingTable mappings = default_mappings();
  GroupWeights weights = default_weights();
  int jobs = 1;
  std::uint64_t seed = 0;
  NodeMatchOptions node_match;
  RansacConfig ransac;

  /// Throws ConfigError on unknown metrics, missing mappings or jobs < 1.
  void validate() const;
  bool enabled(std::string_view metric) const;
};

enum class MetricStatus { Ok, Skipped, Error, Pooled };
std::string_view to_string(MetricStatus s) noexcept;

struct MetricValue {
  std::string metric;
  MetricStatus status = MetricStatus::Skipped;
  std::optional<double> raw;
  std::optional<double> mapped;
  std::string note;  ///< skip reason or error message
};

struct MetricFailure {
  std::string sample_id;
  std::string metric;
  Errc code = Errc::IoError;
  std::string message;
};

struct InputDigest {
  std::string path;  ///< relative to the manifest directory
  std::string sha256;
};

struct SampleRecord {
  std::string id;
  std::string model;
  bool has_ground_truth = false;
  std::vector<MetricValue> metrics;  ///< catalog order
  std::vector<InputDigest> inputs;
  std::map<std::string, std::string> details;
  std::vector<MetricFailure> failures;

  // Clip features carried to the per-model pooled distribution metric.
  std::optional<EmbeddingSequence> gen_clip;
  std::optional<EmbeddingSequence> gt_clip;

  const MetricValue& metric(std::string_view name) const;
};

/// Runs every enabled metric whose inputs exist. Module errors are recorded
/// as failures tagged with the sample id and metric, never thrown.
SampleRecord evaluate_sample(const Sample& sample, const EvaluationPlan& plan, const std::filesystem::path& base_dir);

struct ModelMetric {
  std::string metric;
  MetricStatus status = MetricStatus::Skipped;
  std::optional<double> raw;
  std::optional<double> mapped;
  std::size_t samples = 0;  ///< samples (or pooled feature rows) contributing
  std::string note;
};

struct ScoreCard {
  std::string model;
  std::vector<ModelMetric> metrics;
  std::map<std::string, double> group_means;
  std::optional<double> overall;
  std::vector<SampleRecord> samples;
  std::vector<MetricFailure> failures;

  const ModelMetric& metric(std::string_view name) const;
};

/// Averages raw values over samples, maps once, aggregates groups. Records
/// must all belong to one model and are taken in the given order.
ScoreCard reduce_model(const std::vector<SampleRecord>& records, const EvaluationPlan& plan);

struct EvaluationResult {
  std::vector<ScoreCard> scorecards;  ///< in order of first appearance
  std::size_t failure_count() const;
};

/// Evaluates every sample with up to plan.jobs workers, then reduces per model.
EvaluationResult evaluate_manifest(const Manifest& manifest, const EvaluationPlan& plan);

struct DatasetInfo {
  std::string name;
  std::string version;
};

std::string scorecard_json(const ScoreCard& card, const EvaluationPlan& plan, const DatasetInfo& dataset);
std::string leaderboard_csv(const std::vector<ScoreCard>& cards);

/// Safe file stem for a model name.
std::string scorecard_filename(const std::string& model);

}  // namespace eeval
