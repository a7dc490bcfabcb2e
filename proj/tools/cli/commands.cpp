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
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "eeval/core/embedding.hpp"
#include "eeval/core/io.hpp"
#include "eeval/core/rle.hpp"
#include "eeval/core/tracks.hpp"
#include "eeval/engine.hpp"
#include "eeval/frame_metrics.hpp"

namespace eeval::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) fail(Errc::ConfigError, std::string(flag) + " is required");
}

void require_file(const std::string& path, const char* flag) {
  require(path, flag);
  if (!fs::exists(path)) fail(Errc::ConfigError, std::string(flag) + " file not found: " + path);
}

MappingTable load_table(const Options& o) {
  if (o.mappings.empty()) return default_mappings();
  require_file(o.mappings, "--mappings");
  return read_mappings_file(o.mappings);
}

EvaluationPlan make_plan(const Options& o) {
  EvaluationPlan plan;
  plan.mappings = load_table(o);
  plan.weights = parse_weights(o.weights);
  plan.metrics_enabled = split_list(o.metrics);
  plan.jobs = o.jobs;
  plan.seed = o.seed;
  plan.node_match.strict_args = o.strict_args;
  plan.validate();
  return plan;
}

FitOptions fit_options(const Options& o) {
  FitOptions f{o.grid_max, o.grid_step, o.folds, o.seed};
  f.validate();
  return f;
}

/// Long-form table id,metric,value into metric -> id -> value.
std::map<std::string, std::map<std::string, double>> read_values(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::map<std::string, std::map<std::string, double>> out;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (!header) {
      if (f != std::vector<std::string>{"id", "metric", "value"}) fail(Errc::SchemaError, path + ": header must be id,metric,value");
      header = true;
      continue;
    }
    if (f.size() != 3) fail(Errc::SchemaError, path + ": expected 3 fields in '" + line + "'");
    if (!find_metric(f[1])) fail(Errc::ConfigError, path + ": unknown metric '" + f[1] + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(f[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != f[2].size()) fail(Errc::SchemaError, path + ": bad value '" + f[2] + "'");
    if (!out[f[1]].emplace(f[0], v).second) fail(Errc::SchemaError, path + ": duplicate " + f[0] + "/" + f[1]);
  }
  if (!header) fail(Errc::SchemaError, path + ": empty table");
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

int config_error(std::ostream& log, const char* cmd, const std::exception& e) {
  log << "eeval " << cmd << ": " << e.what() << "\n";
  return kConfigError;
}

}  // namespace

int cmd_evaluate(const Options& o, std::ostream& log) {
  Manifest manifest;
  EvaluationPlan plan;
  try {
    require(o.manifest, "--manifest");
    manifest = load_manifest(o.manifest);
    plan = make_plan(o);
  } catch (const Error& e) {
    return config_error(log, "evaluate", e);
  }

  const EvaluationResult result = evaluate_manifest(manifest, plan);
  const DatasetInfo dataset{manifest.dataset_name, manifest.version};
  try {
    fs::create_directories(o.out);
    for (const auto& card : result.scorecards) {
      write_file_atomic(fs::path(o.out) / scorecard_filename(card.model), scorecard_json(card, plan, dataset));
    }
    write_file_atomic(fs::path(o.out) / "leaderboard.csv", leaderboard_csv(result.scorecards));
  } catch (const std::exception& e) {
    return config_error(log, "evaluate", e);
  }

  for (const auto& card : result.scorecards) {
    for (const auto& f : card.failures) {
      log << "error: model " << card.model << " sample " << f.sample_id << " metric " << f.metric << ": " << to_string(f.code) << ": " << f.message
          << "\n";
    }
  }
  log << "wrote " << result.scorecards.size() << " scorecard(s) and leaderboard.csv to " << o.out << "\n";
  return result.failure_count() > 0 ? kMetricErrors : kOk;
}

int cmd_calibrate(const Options& o, std::ostream& log) {
  MappingTable table;
  FitOptions fit;
  std::map<std::string, std::map<std::string, double>> values;
  std::map<std::string, double> ratings;
  try {
    table = load_table(o);
    fit = fit_options(o);
    if (o.family != "keep" && o.family != "auto" &&
        (o.family == "simple" || parse_family(o.family) == MappingFamily::Simple)) {
      fail(Errc::ConfigError, "--family must be keep, auto, gamma, logit or tanh");
    }
    require_file(o.values, "--values");
    require_file(o.human, "--human");
    values = read_values(o.values);
    ratings = mean_ratings(read_human_ratings(o.human));
  } catch (const Error& e) {
    return config_error(log, "calibrate", e);
  }

  std::set<std::string> value_ids;
  for (const auto& [metric, by_id] : values) {
    for (const auto& [id, v] : by_id) value_ids.insert(id);
  }
  std::vector<std::string> orphans;
  for (const auto& id : value_ids) {
    if (!ratings.contains(id)) orphans.push_back(id + " (no rating)");
  }
  for (const auto& [id, r] : ratings) {
    if (!value_ids.contains(id)) orphans.push_back(id + " (no metric values)");
  }
  if (!orphans.empty()) {
    log << "eeval calibrate: ids do not match: " << join(orphans) << "\n";
    return kConfigError;
  }

  int code = kOk;
  std::vector<CalibratedMapping> out;
  for (const auto& info : metric_catalog()) {
    MappingSpec spec = table.at(info.name);
    const auto it = values.find(std::string(info.name));
    if (it == values.end()) {
      out.push_back({spec, std::nullopt, 0});
      continue;
    }
    std::vector<MappingFamily> families;
    if (o.family == "auto") families = {MappingFamily::Gamma, MappingFamily::Logit, MappingFamily::Tanh};
    else if (o.family != "keep") families = {parse_family(o.family)};
    else if (spec.family != MappingFamily::Simple) families = {spec.family};
    if (families.empty()) {
      log << info.name << ": simple mapping has no parameter; kept\n";
      out.push_back({spec, std::nullopt, it->second.size()});
      continue;
    }
    std::vector<double> x01, human;
    for (const auto& [id, v] : it->second) {
      x01.push_back(prescale(v, spec));
      human.push_back(ratings.at(id));
    }
    try {
      std::optional<FitResult> best;
      for (MappingFamily f : families) {
        FitResult r = fit_mapping_theta(x01, human, f, fit);
        if (!best || r.objective > best->objective) best = std::move(r);
      }
      spec.family = best->family;
      spec.theta = best->theta;
      log << info.name << ": " << to_string(spec.family) << " " << spec.theta << " (objective " << best->objective << ")\n";
      out.push_back({spec, std::move(best), x01.size()});
    } catch (const Error& e) {
      log << "error: metric " << info.name << ": " << e.what() << "\n";
      out.push_back({spec, std::nullopt, x01.size()});
      code = kMetricErrors;
    }
  }
  try {
    fs::create_directories(o.out);
    write_mappings_file(fs::path(o.out) / "mappings.json", out);
  } catch (const std::exception& e) {
    return config_error(log, "calibrate", e);
  }
  return code;
}

int cmd_report(const Options& o, std::ostream& log) {
  std::vector<std::string> models;
  std::vector<double> overall, human;
  std::vector<AfcResponse> afc;
  try {
    require(o.scorecards, "--scorecards");
    if (!fs::is_directory(o.scorecards)) fail(Errc::ConfigError, "--scorecards directory not found: " + o.scorecards);
    require_file(o.human, "--human");
    const auto ratings = mean_ratings(read_human_ratings(o.human));
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(o.scorecards)) {
      if (e.path().filename().string().ends_with(".scorecard.json")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::map<std::string, double> by_model;
    for (const auto& f : files) {
      const nlohmann::json doc = read_json_file(f);
      if (!doc.contains("model") || !doc.contains("overall")) fail(Errc::SchemaError, f.string() + ": not a scorecard");
      const std::string model = doc["model"].get<std::string>();
      if (doc["overall"].is_null()) {
        log << "warning: " << model << " has no overall score\n";
        continue;
      }
      by_model[model] = doc["overall"].get<double>();
    }
    for (const auto& [model, score] : by_model) {
      const auto it = ratings.find(model);
      if (it == ratings.end()) {
        log << "warning: no rating for model " << model << "\n";
        continue;
      }
      models.push_back(model);
      overall.push_back(score);
      human.push_back(it->second);
    }
    if (models.size() < 3) fail(Errc::TooFewPoints, "correlation needs at least 3 rated models, found " + std::to_string(models.size()));
    if (!o.afc_log.empty()) {
      require_file(o.afc_log, "--afc-log");
      afc = read_afc_log(o.afc_log);
    }
  } catch (const Error& e) {
    return config_error(log, "report", e);
  }

  try {
    const Correlation c = correlations(overall, human);
    const fs::path out(o.out);
    fs::create_directories(out);
    if (o.format == "json") {
      ordered_json doc;
      ordered_json points = ordered_json::array();
      for (std::size_t i = 0; i < models.size(); ++i) {
        points.push_back({{"model", models[i]}, {"overall", overall[i]}, {"human_rating", human[i]}});
      }
      doc["points"] = std::move(points);
      doc["n"] = models.size();
      doc["pearson_r"] = c.pearson;
      doc["spearman_rho"] = c.spearman;
      write_file_atomic(out / "report.json", doc.dump(2) + "\n");
    } else {
      std::string pts = "model,overall,human_rating\n";
      for (std::size_t i = 0; i < models.size(); ++i) {
        pts += csv_field(models[i]) + "," + exact(overall[i]) + "," + exact(human[i]) + "\n";
      }
      write_file_atomic(out / "scatter.csv", pts);
      write_file_atomic(out / "correlation.csv", "statistic,value\nn," + std::to_string(models.size()) +
                                                     "\npearson_r," + exact(c.pearson) + "\nspearman_rho," +
                                                     exact(c.spearman) + "\n");
    }
    write_file_atomic(out / "scatter.svg", scatter_svg("Overall score vs. human rating", "overall score",
                                                       "mean human rating", models, overall, human, c.pearson,
                                                       c.spearman));
    if (!afc.empty()) {
      const auto ratio = deceive_ratio(afc);
      std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
      for (const auto& r : afc) {
        counts[r.model].first += r.judged_real ? 1 : 0;
        ++counts[r.model].second;
      }
      if (o.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& [model, v] : ratio) {
          doc.push_back({{"model", model}, {"responses", counts[model].second}, {"judged_real", counts[model].first},
                         {"deceive_ratio", v}});
        }
        write_file_atomic(out / "deceive_ratio.json", doc.dump(2) + "\n");
      } else {
        std::string t = "model,responses,judged_real,deceive_ratio\n";
        for (const auto& [model, v] : ratio) {
          t += csv_field(model) + "," + std::to_string(counts[model].second) + "," +
               std::to_string(counts[model].first) + "," + exact(v) + "\n";
        }
        write_file_atomic(out / "deceive_ratio.csv", t);
      }
    }
    log << "n=" << models.size() << " r=" << c.pearson << " rho=" << c.spearman << "\n";
  } catch (const Error& e) {
    return config_error(log, "report", e);
  }
  return kOk;
}

int cmd_correlate(const Options& o, std::ostream& log) {
  MappingTable table;
  std::map<std::string, std::map<std::string, double>> values;
  std::map<std::string, double> ratings;
  try {
    table = load_table(o);
    require_file(o.values, "--values");
    require_file(o.human, "--human");
    values = read_values(o.values);
    ratings = mean_ratings(read_human_ratings(o.human));
  } catch (const Error& e) {
    return config_error(log, "correlate", e);
  }

  ordered_json rows = ordered_json::array();
  std::string csv = "metric,n,pearson_raw,spearman_raw,pearson_mapped,spearman_mapped,note\n";
  int computed = 0;
  for (const auto& info : metric_catalog()) {
    const auto it = values.find(std::string(info.name));
    if (it == values.end()) continue;
    std::vector<double> raw, mapped, human;
    for (const auto& [id, v] : it->second) {
      const auto r = ratings.find(id);
      if (r == ratings.end()) continue;
      raw.push_back(v);
      mapped.push_back(map_value(v, table.at(info.name)));
      human.push_back(r->second);
    }
    ordered_json row{{"metric", info.name}, {"n", raw.size()}};
    std::string line = std::string(info.name) + "," + std::to_string(raw.size());
    try {
      const Correlation cr = correlations(raw, human);
      const Correlation cm = correlations(mapped, human);
      row["pearson_raw"] = cr.pearson;
      row["spearman_raw"] = cr.spearman;
      row["pearson_mapped"] = cm.pearson;
      row["spearman_mapped"] = cm.spearman;
      line += "," + exact(cr.pearson) + "," + exact(cr.spearman) + "," + exact(cm.pearson) + "," + exact(cm.spearman) + ",";
      ++computed;
    } catch (const Error& e) {
      row["note"] = e.what();
      line += ",,,," + csv_field(e.what());
    }
    rows.push_back(std::move(row));
    csv += line + "\n";
  }
  if (computed == 0) {
    log << "eeval correlate: no metric has 3 or more rated, non-constant values\n";
    return kConfigError;
  }
  try {
    fs::create_directories(o.out);
    if (o.format == "json") write_file_atomic(fs::path(o.out) / "correlations.json", rows.dump(2) + "\n");
    else write_file_atomic(fs::path(o.out) / "correlations.csv", csv);
  } catch (const std::exception& e) {
    return config_error(log, "correlate", e);
  }
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& log) {
  Manifest manifest;
  try {
    require(o.manifest, "--manifest");
    manifest = load_manifest(o.manifest);
  } catch (const Error& e) {
    return config_error(log, "validate", e);
  }
  std::size_t bad = 0, checked = 0;
  auto check = [&](const Sample& s, const std::optional<fs::path>& p, const char* field, auto&& reader) {
    if (!p) return;
    ++checked;
    try {
      reader(*p);
    } catch (const std::exception& e) {
      ++bad;
      log << "FAIL " << s.id << " " << field << " " << display_path(*p, manifest.base_dir) << ": " << e.what() << "\n";
    }
  };
  auto frames = [](const fs::path& p) { load_frames(p); };
  auto masks = [](const fs::path& p) { read_rle_file(p); };
  auto embedding = [](const fs::path& p) { read_embedding_file(p); };
  auto tracks = [](const fs::path& p) { read_track_file(p); };
  for (const auto& s : manifest.samples) {
    check(s, s.gen_frames_dir, "gen_frames_dir", frames);
    check(s, s.gt_frames_dir, "gt_frames_dir", frames);
    check(s, s.gen_masks.obj, "gen_masks.obj", masks);
    check(s, s.gen_masks.arm, "gen_masks.arm", masks);
    check(s, s.gt_masks.obj, "gt_masks.obj", masks);
    check(s, s.gt_masks.arm, "gt_masks.arm", masks);
    check(s, s.gen_embeddings.global, "gen_embeddings.global", embedding);
    check(s, s.gen_embeddings.patch, "gen_embeddings.patch", embedding);
    check(s, s.gen_embeddings.clip, "gen_embeddings.clip", embedding);
    check(s, s.gt_embeddings.global, "gt_embeddings.global", embedding);
    check(s, s.gt_embeddings.patch, "gt_embeddings.patch", embedding);
    check(s, s.gt_embeddings.clip, "gt_embeddings.clip", embedding);
    check(s, s.gen_tracks, "gen_tracks", tracks);
    check(s, s.gt_tracks, "gt_tracks", tracks);
    check(s, s.judge("caption"), "judge_outputs.caption", [](const fs::path& p) { read_caption_judgment(p); });
    check(s, s.judge("sequence_exec"), "judge_outputs.sequence_exec",
          [](const fs::path& p) { read_sequence_exec_judgment(p); });
    check(s, s.judge("physical"), "judge_outputs.physical", [](const fs::path& p) { read_physical_judgment(p); });
    check(s, s.judge("planning"), "judge_outputs.planning", [](const fs::path& p) { read_planning_judgment(p); });
  }
  log << manifest.samples.size() << " sample(s), " << checked << " file(s) checked, " << bad << " failed\n";
  return bad > 0 ? kMetricErrors : kOk;
}

}  // namespace eeval::cli
