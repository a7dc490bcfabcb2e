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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json_fwd.hpp"

namespace eeval {

enum class Direction { HigherIsBetter, LowerIsBetter };
enum class MappingFamily { Simple, Gamma, Logit, Tanh };

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(MappingFamily f) noexcept;
Direction parse_direction(std::string_view s);
MappingFamily parse_family(std::string_view s);

inline constexpr double kLogitEpsilon = 1e-6;

/// Per-metric normalization: clip to [lower, upper], rescale to [0, 1]
/// (flipped for lower-is-better), then a monotone curve scaled to 0..100.
struct MappingSpec {
  std::string metric;
  Direction direction = Direction::HigherIsBetter;
  double lower = 0.0;
  double upper = 1.0;
  MappingFamily family = MappingFamily::Simple;
  double theta = 1.0;  ///< gamma exponent, logit temperature or tanh slope

  /// Throws BadTheta or ConfigError.
  void validate() const;
};

double prescale(double x, const MappingSpec& spec);
double apply_mapping(double x01, MappingFamily family, double theta);
double apply_mapping(double x01, const MappingSpec& spec);

/// prescale followed by apply_mapping.
double map_value(double raw, const MappingSpec& spec);

inline constexpr std::array<std::string_view, 4> kGroups = {"quality", "instruction", "physical", "planning"};

struct MetricInfo {
  std::string_view name;
  std::string_view group;
  std::string_view label;
};

/// The 21 metrics in reporting order.
const std::vector<MetricInfo>& metric_catalog();
const MetricInfo* find_metric(std::string_view name);

class MappingTable {
 public:
  MappingTable() = default;
  explicit MappingTable(std::vector<MappingSpec> specs);

  const MappingSpec* find(std::string_view metric) const;
  const MappingSpec& at(std::string_view metric) const;
  const std::vector<MappingSpec>& specs() const { return specs_; }
  void upsert(MappingSpec spec);

 private:
  std::vector<MappingSpec> specs_;
};

MappingTable default_mappings();

/// Mapping file: {"mappings": [{metric, direction, lower, upper, family, theta, calibration?}]}.
/// Metrics absent from the file keep their defaults.
MappingTable read_mappings_file(const std::filesystem::path& path);

using GroupWeights = std::map<std::string, double>;

/// Unit weights for the four groups.
GroupWeights default_weights();

/// Accepts "quality=1,physical=2" or a path to a JSON object of the same.
GroupWeights parse_weights(std::string_view text);

struct Aggregate {
  std::map<std::string, double> group_means;  ///< available groups only
  double overall = 0.0;
};

/// Groups with no scores are unavailable; the overall renormalizes weights
/// over the available ones. Missing weights count as 1.
Aggregate aggregate_overall(const std::map<std::string, std::vector<double>>& group_scores,
                            const GroupWeights& weights);

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
};

/// Average ranks, 1-based; ties share the mean rank.
std::vector<double> average_ranks(const std::vector<double>& v);
double pearson(const std::vector<double>& x, const std::vector<double>& y);
double spearman(const std::vector<double>& x, const std::vector<double>& y);
Correlation correlations(const std::vector<double>& x, const std::vector<double>& y);

struct FitOptions {
  double grid_max = 5.0;
  double grid_step = 0.01;
  int folds = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// theta candidates step, 2*step, ..., grid_max.
std::vector<double> theta_grid(const FitOptions& opts);

/// Seeded shuffle then contiguous blocks; earlier folds take the remainder.
std::vector<std::vector<std::size_t>> make_fold_plan(std::size_t n, int folds, std::uint64_t seed);

/// Fisher-z averaged held-out Pearson of mapped values vs ratings, back-transformed.
double cv_objective(const std::vector<double>& x01, const std::vector<double>& human, MappingFamily family, double theta,
                    const std::vector<std::vector<std::size_t>>& plan);

struct FitResult {
  MappingFamily family = MappingFamily::Gamma;
  double theta = 1.0;
  double objective = 0.0;
  double spearman = 0.0;
  std::vector<std::vector<std::size_t>> fold_plan;
};

/// Grid search over theta. x01 are prescaled metric values.
FitResult fit_mapping_theta(const std::vector<double>& x01, const std::vector<double>& human, MappingFamily family,
                            const FitOptions& opts);

struct CalibratedMapping {
  MappingSpec spec;
  std::optional<FitResult> fit;
  std::size_t points = 0;
};

void write_mappings_file(const std::filesystem::path& path, const std::vector<CalibratedMapping>& mappings);

struct HumanRating {
  std::string id;
  double rating = 0.0;
  std::string rater;
};

/// CSV with header model_or_sample_id,rating,rater_id.
std::vector<HumanRating> read_human_ratings(const std::filesystem::path& path);

/// Mean rating per id.
std::map<std::string, double> mean_ratings(const std::vector<HumanRating>& ratings);

struct AfcResponse {
  std::string model;
  std::string sample_id;
  std::string rater;
  bool judged_real = false;
};

/// CSV with header model,sample_id,rater_id,judged_real.
std::vector<AfcResponse> read_afc_log(const std::filesystem::path& path);

/// Fraction of responses judged real, per model.
std::map<std::string, double> deceive_ratio(const std::vector<AfcResponse>& responses);

/// Splits one CSV record. Handles double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it holds a comma, quote or newline.
std::string csv_field(std::string_view s);

}  // namespace eeval
