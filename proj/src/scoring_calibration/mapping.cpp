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
#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"
#include "eeval/scoring_calibration.hpp"

namespace eeval {

std::string_view to_string(Direction d) noexcept { return d == Direction::HigherIsBetter ? "HIB" : "LIB"; }

std::string_view to_string(MappingFamily f) noexcept {
  switch (f) {
    case MappingFamily::Simple: return "simple";
    case MappingFamily::Gamma: return "gamma";
    case MappingFamily::Logit: return "logit";
    case MappingFamily::Tanh: return "tanh";
  }
  return "simple";
}

Direction parse_direction(std::string_view s) {
  if (s == "HIB") return Direction::HigherIsBetter;
  if (s == "LIB") return Direction::LowerIsBetter;
  fail(Errc::ConfigError, "direction must be HIB or LIB, got '" + std::string(s) + "'");
}

MappingFamily parse_family(std::string_view s) {
  for (auto f : {MappingFamily::Simple, MappingFamily::Gamma, MappingFamily::Logit, MappingFamily::Tanh}) {
    if (to_string(f) == s) return f;
  }
  fail(Errc::ConfigError, "unknown mapping family '" + std::string(s) + "'");
}

void MappingSpec::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    fail(Errc::ConfigError, "mapping for '" + metric + "' needs finite lower < upper");
  }
  if (family != MappingFamily::Simple && !(theta > 0.0 && std::isfinite(theta))) {
    fail(Errc::BadTheta, "mapping for '" + metric + "' needs a positive parameter");
  }
}

double prescale(double x, const MappingSpec& spec) {
  const double clipped = std::clamp(x, spec.lower, spec.upper);
  const double hib = (clipped - spec.lower) / (spec.upper - spec.lower);
  return spec.direction == Direction::HigherIsBetter ? hib : 1.0 - hib;
}

double apply_mapping(double x01, MappingFamily family, double theta) {
  if (family != MappingFamily::Simple && !(theta > 0.0 && std::isfinite(theta))) {
    fail(Errc::BadTheta, "mapping parameter must be positive");
  }
  if (!(x01 >= 0.0 && x01 <= 1.0)) fail(Errc::OutOfRange, "mapping input must be in [0, 1]");
  double f = x01;
  switch (family) {
    case MappingFamily::Simple: break;
    case MappingFamily::Gamma: f = std::pow(x01, theta); break;
    case MappingFamily::Logit: {
      const double x = std::clamp(x01, kLogitEpsilon, 1.0 - kLogitEpsilon);
      const double t = std::log(x / (1.0 - x)) / theta;
      f = 1.0 / (1.0 + std::exp(-t));
      break;
    }
    case MappingFamily::Tanh: f = 0.5 * (std::tanh(theta * (2.0 * x01 - 1.0)) + 1.0); break;
  }
  return 100.0 * f;
}

double apply_mapping(double x01, const MappingSpec& spec) { return apply_mapping(x01, spec.family, spec.theta); }

double map_value(double raw, const MappingSpec& spec) { return apply_mapping(prescale(raw, spec), spec); }

const std::vector<MetricInfo>& metric_catalog() {
  static const std::vector<MetricInfo> catalog = {
      {"fvd", "quality", "FVD"},
      {"psnr", "quality", "PSNR"},
      {"ssim", "quality", "SSIM"},
      {"dino", "quality", "DINO"},
      {"dreamsim", "quality", "DreamSim"},
      {"caption", "instruction", "Caption Score"},
      {"sequence_match", "instruction", "Seq. Match Score"},
      {"execution_quality", "instruction", "Exec. Qual Score"},
      {"planning_dag", "planning", "Planning DAG"},
      {"mrc_arm", "physical", "Robot Con."},
      {"mrc_obj", "physical", "Obj. Con."},
      {"mrc_bg", "physical", "Scene Con."},
      {"robot_traj_l2norm", "physical", "Robot Traj. L2norm"},
      {"robot_traj_dtw", "physical", "Robot Traj. DTW"},
      {"robot_traj_frechet", "physical", "Robot Traj. FD"},
      {"obj_traj_l2norm", "physical", "Obj. Traj. L2norm"},
      {"obj_traj_dtw", "physical", "Obj. Traj. DTW"},
      {"obj_traj_frechet", "physical", "Obj. Traj. FD"},
      {"physical_score", "physical", "Physical Score"},
      {"camera_ate", "physical", "Cam. ATE"},
      {"camera_rpe", "physical", "Cam. RPE"},
  };
  return catalog;
}

const MetricInfo* find_metric(std::string_view name) {
  for (const auto& m : metric_catalog()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

MappingTable::MappingTable(std::vector<MappingSpec> specs) {
  for (auto& s : specs) upsert(std::move(s));
}

const MappingSpec* MappingTable::find(std::string_view metric) const {
  for (const auto& s : specs_) {
    if (s.metric == metric) return &s;
  }
  return nullptr;
}

const MappingSpec& MappingTable::at(std::string_view metric) const {
  const MappingSpec* s = find(metric);
  if (!s) fail(Errc::ConfigError, "no mapping for metric '" + std::string(metric) + "'");
  return *s;
}

void MappingTable::upsert(MappingSpec spec) {
  spec.validate();
  for (auto& s : specs_) {
    if (s.metric == spec.metric) {
      s = std::move(spec);
      return;
    }
  }
  specs_.push_back(std::move(spec));
}

MappingTable default_mappings() {
  constexpr auto H = Direction::HigherIsBetter;
  constexpr auto L = Direction::LowerIsBetter;
  constexpr auto G = MappingFamily::Gamma;
  constexpr auto T = MappingFamily::Tanh;
  constexpr auto S = MappingFamily::Simple;
  const double diag = std::sqrt(2.0);
  return MappingTable({
      {"fvd", L, 0.0, 2000.0, G, 1.52},
      {"psnr", H, 0.0, 50.0, T, 4.71},
      {"ssim", H, 0.0, 1.0, G, 0.61},
      {"dino", H, 0.0, 1.0, G, 3.06},
      {"dreamsim", H, 0.0, 1.0, G, 2.94},
      {"caption", H, 0.0, 100.0, G, 0.12},
      {"sequence_match", H, 0.0, 100.0, G, 2.45},
      {"execution_quality", H, 0.0, 100.0, G, 2.97},
      {"planning_dag", H, 0.0, 100.0, S, 1.0},
      {"mrc_arm", H, 0.0, 1.0, G, 2.93},
      {"mrc_obj", H, 0.0, 1.0, T, 4.93},
      {"mrc_bg", H, 0.0, 1.0, G, 3.94},
      {"robot_traj_l2norm", L, 0.0, diag, G, 2.86},
      {"robot_traj_dtw", L, 0.0, diag, G, 1.87},
      {"robot_traj_frechet", L, 0.0, diag, G, 4.00},
      {"obj_traj_l2norm", L, 0.0, diag, G, 1.27},
      {"obj_traj_dtw", L, 0.0, diag, G, 2.99},
      {"obj_traj_frechet", L, 0.0, diag, G, 3.52},
      {"physical_score", H, 0.0, 100.0, S, 1.0},
      {"camera_ate", L, 0.0, diag, S, 1.0},
      {"camera_rpe", L, 0.0, diag, S, 1.0},
  });
}

MappingTable read_mappings_file(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  MappingTable table = default_mappings();
  try {
    if (!doc.is_object() || !doc.contains("mappings") || !doc["mappings"].is_array()) {
      fail(Errc::ConfigError, "expected an object with a 'mappings' list");
    }
    for (const auto& m : doc["mappings"]) {
      MappingSpec spec;
      spec.metric = m.at("metric").get<std::string>();
      if (!find_metric(spec.metric)) fail(Errc::ConfigError, "unknown metric '" + spec.metric + "'");
      spec.direction = parse_direction(m.at("direction").get<std::string>());
      spec.lower = m.at("lower").get<double>();
      spec.upper = m.at("upper").get<double>();
      spec.family = parse_family(m.at("family").get<std::string>());
      if (spec.family != MappingFamily::Simple) spec.theta = m.at("theta").get<double>();
      table.upsert(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigError, path.string() + ": " + e.what());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.message());
  }
  return table;
}

void write_mappings_file(const std::filesystem::path& path, const std::vector<CalibratedMapping>& mappings) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : mappings) {
    nlohmann::ordered_json m;
    m["metric"] = c.spec.metric;
    m["direction"] = to_string(c.spec.direction);
    m["lower"] = c.spec.lower;
    m["upper"] = c.spec.upper;
    m["family"] = to_string(c.spec.family);
    if (c.spec.family != MappingFamily::Simple) m["theta"] = c.spec.theta;
    if (c.fit) {
      nlohmann::ordered_json cal;
      cal["objective"] = c.fit->objective;
      cal["spearman"] = c.fit->spearman;
      cal["points"] = c.points;
      cal["fold_plan"] = c.fit->fold_plan;
      m["calibration"] = std::move(cal);
    }
    list.push_back(std::move(m));
  }
  nlohmann::ordered_json doc;
  doc["mappings"] = std::move(list);
  write_file_atomic(path, doc.dump(2) + "\n");
}

GroupWeights default_weights() {
  GroupWeights w;
  for (auto g : kGroups) w[std::string(g)] = 1.0;
  return w;
}

GroupWeights parse_weights(std::string_view text) {
  GroupWeights w = default_weights();
  auto set = [&w](const std::string& group, double value) {
    if (std::find(kGroups.begin(), kGroups.end(), group) == kGroups.end()) {
      fail(Errc::ConfigError, "unknown group '" + group + "' in weights");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) fail(Errc::NegativeWeight, "weight for '" + group + "' is negative");
    w[group] = value;
  };
  if (text.empty()) return w;
  if (text.find('=') == std::string_view::npos) {
    const nlohmann::json doc = read_json_file(std::filesystem::path(std::string(text)));
    if (!doc.is_object()) fail(Errc::ConfigError, "weights file must hold a JSON object");
    for (const auto& [k, v] : doc.items()) {
      if (!v.is_number()) fail(Errc::ConfigError, "weight for '" + k + "' must be a number");
      set(k, v.get<double>());
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) fail(Errc::ConfigError, "weights entry '" + std::string(item) + "' lacks '='");
    const std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) fail(Errc::ConfigError, "bad weight value '" + value + "'");
    set(std::string(item.substr(0, eq)), v);
    pos = end + 1;
  }
  return w;
}

Aggregate aggregate_overall(const std::map<std::string, std::vector<double>>& group_scores,
                            const GroupWeights& weights) {
  for (const auto& [g, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(Errc::NegativeWeight, "weight for '" + g + "' is negative");
  }
  Aggregate out;
  double weight_sum = 0.0;
  for (const auto& [g, scores] : group_scores) {
    if (scores.empty()) continue;
    double sum = 0.0;
    for (double s : scores) sum += s;
    out.group_means[g] = sum / static_cast<double>(scores.size());
    const auto it = weights.find(g);
    weight_sum += it == weights.end() ? 1.0 : it->second;
  }
  if (out.group_means.empty()) fail(Errc::NoGroups, "no group has a valid metric");
  if (!(weight_sum > 0.0)) fail(Errc::NoGroups, "every available group has zero weight");
  for (const auto& [g, mean] : out.group_means) {
    const auto it = weights.find(g);
    const double w = it == weights.end() ? 1.0 : it->second;
    out.overall += w / weight_sum * mean;
  }
  return out;
}

}  // namespace eeval
