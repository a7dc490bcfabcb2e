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
#include <atomic>
#include <functional>
#include <thread>

#include "eeval/core/io.hpp"
#include "eeval/core/resample.hpp"
#include "eeval/core/rle.hpp"
#include "eeval/core/tracks.hpp"
#include "eeval/engine.hpp"
#include "eeval/frame_metrics.hpp"
#include "eeval/region_consistency.hpp"
#include "eeval/trajectory_metrics.hpp"

namespace eeval {
namespace {

namespace fs = std::filesystem;
using OptPath = std::optional<fs::path>;

std::string path_digest(const fs::path& path) {
  if (!fs::is_directory(path)) return sha256_file(path);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::string listing;
  for (const auto& f : files) listing += f.filename().string() + " " + sha256_file(f) + "\n";
  return sha256_bytes(listing);
}

/// Uniformly subsamples the frames of a patch-grid sequence.
EmbeddingSequence take_frames(const EmbeddingSequence& seq, const std::vector<std::size_t>& idx) {
  const std::size_t per_frame = seq.rows() * seq.cols() * seq.dim();
  std::vector<float> data;
  data.reserve(idx.size() * per_frame);
  for (std::size_t t : idx) {
    const float* begin = seq.data().data() + t * per_frame;
    data.insert(data.end(), begin, begin + per_frame);
  }
  return EmbeddingSequence(idx.size(), seq.rows(), seq.cols(), seq.dim(), std::move(data));
}

RleMaskSequence take_mask_frames(const RleMaskSequence& seq, const std::vector<std::size_t>& idx) {
  RleMaskSequence out;
  out.height = seq.height;
  out.width = seq.width;
  for (std::size_t t : idx) out.frames.push_back(seq.frames[t]);
  return out;
}

/// One unit of work producing one or more metrics from shared inputs.
struct Step {
  std::vector<std::string> metrics;
  bool needs_ground_truth = false;
  std::vector<std::pair<std::string, OptPath>> inputs;
  std::function<std::map<std::string, double>()> compute;
  MetricStatus success = MetricStatus::Ok;
};

class SampleEvaluator {
 public:
  SampleEvaluator(const Sample& sample, const EvaluationPlan& plan, const fs::path& base_dir)
      : s_(sample), plan_(plan), base_(base_dir) {
    ransac_ = plan.ransac;
    ransac_.seed = plan.seed;
  }

  SampleRecord run() {
    record_.id = s_.id;
    record_.model = s_.model;
    record_.has_ground_truth = s_.has_ground_truth();
    for (const auto& info : metric_catalog()) record_.metrics.push_back({std::string(info.name), MetricStatus::Skipped, {}, {}, ""});
    record_digests();
    for (auto& step : steps()) execute(step);
    return std::move(record_);
  }

 private:
  MetricValue& slot(const std::string& metric) {
    for (auto& m : record_.metrics) {
      if (m.metric == metric) return m;
    }
    fail(Errc::ConfigError, "unknown metric '" + metric + "'");
  }

  void record_digests() {
    for (const auto& p : referenced_paths(s_)) {
      InputDigest d{display_path(p, base_), ""};
      try {
        d.sha256 = path_digest(p);
      } catch (const std::exception&) {
        d.sha256 = "unreadable";
      }
      record_.inputs.push_back(std::move(d));
    }
  }

  void execute(Step& step) {
    std::vector<std::string> active;
    for (const auto& m : step.metrics) {
      if (plan_.enabled(m)) active.push_back(m);
      else slot(m).note = "disabled";
    }
    if (active.empty()) return;
    std::string reason;
    if (step.needs_ground_truth && !s_.has_ground_truth()) {
      reason = "requires ground truth";
    } else {
      for (const auto& [name, path] : step.inputs) {
        if (!path) {
          reason = "missing input: " + name;
          break;
        }
      }
    }
    if (!reason.empty()) {
      for (const auto& m : active) slot(m).note = reason;
      return;
    }
    try {
      const auto values = step.compute();
      for (const auto& m : active) {
        MetricValue& v = slot(m);
        v.status = step.success;
        if (step.success == MetricStatus::Ok) {
          v.raw = values.at(m);
          v.mapped = map_value(*v.raw, plan_.mappings.at(m));
        }
      }
    } catch (const Error& e) {
      fail_all(active, e.code(), e.message());
    } catch (const std::exception& e) {
      fail_all(active, Errc::IoError, e.what());
    }
  }

  void fail_all(const std::vector<std::string>& metrics, Errc code, const std::string& message) {
    for (const auto& m : metrics) {
      MetricValue& v = slot(m);
      v.status = MetricStatus::Error;
      v.note = std::string(to_string(code)) + ": " + message;
      record_.failures.push_back({s_.id, m, code, message});
    }
  }

  const FrameSequence& gen_frames() {
    if (!gen_frames_) gen_frames_ = load_frames(*s_.gen_frames_dir);
    return *gen_frames_;
  }
  const FrameSequence& gt_frames() {
    if (!gt_frames_) gt_frames_ = load_frames(*s_.gt_frames_dir);
    return *gt_frames_;
  }

  OptPath mask_path(bool gt, bool arm) const {
    const RegionMaskPaths& m = gt ? s_.gt_masks : s_.gen_masks;
    return arm ? m.arm : m.obj;
  }

  const CameraTrajectory& camera(bool gt) {
    auto& cached = gt ? gt_camera_ : gen_camera_;
    if (!cached) cached = estimate_camera_trajectory(read_track_file(gt ? *s_.gt_tracks : *s_.gen_tracks), ransac_);
    return *cached;
  }

  /// Normalized centroid path of one region, camera-corrected when tracks exist.
  Trajectory2D region_path(bool gt, bool arm) {
    const Trajectory2D pixels = centroid_trajectory(read_rle_file(*mask_path(gt, arm)));
    Trajectory2D path = normalize_and_resample(pixels, pixels.size());
    const OptPath& tracks = gt ? s_.gt_tracks : s_.gen_tracks;
    if (tracks) {
      Trajectory2D cam;
      cam.points = camera(gt).normalized();
      cam.width = path.width;
      cam.height = path.height;
      path = correct_camera(path, cam);
    }
    return path;
  }

  std::map<std::string, double> trajectory_metrics(bool arm) {
    const std::string prefix = arm ? "robot_traj_" : "obj_traj_";
    const TrajectoryPairReport r = compare_trajectories(region_path(false, arm), region_path(true, arm));
    record_.details[prefix + "aligned_length"] = std::to_string(r.aligned_length);
    record_.details[prefix + "camera_corrected"] = s_.gen_tracks && s_.gt_tracks ? "both" : s_.gen_tracks ? "gen" : s_.gt_tracks ? "gt" : "none";
    return {{prefix + "l2norm", r.l2norm}, {prefix + "dtw", r.dtw}, {prefix + "frechet", r.frechet}};
  }

  std::map<std::string, double> mrc_metrics() {
    const bool use_gen = s_.gen_masks.obj || s_.gen_masks.arm;
    const RegionMaskPaths& paths = use_gen ? s_.gen_masks : s_.gt_masks;
    record_.details["mrc_mask_source"] = use_gen ? "gen" : "gt";
    EmbeddingSequence grids = read_embedding_file(*s_.gen_embeddings.patch);
    RegionMasks masks;
    if (paths.obj) masks.obj = read_rle_file(*paths.obj);
    if (paths.arm) masks.arm = read_rle_file(*paths.arm);
    std::size_t length = grids.frames();
    for (const auto* m : {&masks.obj, &masks.arm}) {
      if (*m) length = std::min(length, (*m)->size());
    }
    if (grids.frames() != length) grids = take_frames(grids, uniform_sample_indices(grids.frames(), length));
    for (auto* m : {&masks.obj, &masks.arm}) {
      if (*m && (*m)->size() != length) *m = take_mask_frames(**m, uniform_sample_indices((*m)->size(), length));
    }
    const MrcReport r = mrc(grids, masks);
    return {{"mrc_obj", r.mrc_obj}, {"mrc_arm", r.mrc_arm}, {"mrc_bg", r.mrc_bg}};
  }

  std::vector<Step> steps() {
    const auto& S = s_;
    const OptPath mrc_masks = S.gen_masks.obj   ? S.gen_masks.obj
                              : S.gen_masks.arm ? S.gen_masks.arm
                              : S.gt_masks.obj  ? S.gt_masks.obj
                                                : S.gt_masks.arm;
    std::vector<Step> out;
    out.push_back({{"fvd"}, true, {{"gen_embeddings.clip", S.gen_embeddings.clip}, {"gt_embeddings.clip", S.gt_embeddings.clip}},
                   [this] {
                     record_.gen_clip = read_embedding_file(*s_.gen_embeddings.clip);
                     record_.gt_clip = read_embedding_file(*s_.gt_embeddings.clip);
                     return std::map<std::string, double>{};
                   },
                   MetricStatus::Pooled});
    out.push_back({{"psnr"}, true, {{"gen_frames_dir", S.gen_frames_dir}, {"gt_frames_dir", S.gt_frames_dir}},
                   [this] { return std::map<std::string, double>{{"psnr", psnr_sequence(gen_frames(), gt_frames())}}; }});
    out.push_back({{"ssim"}, true, {{"gen_frames_dir", S.gen_frames_dir}, {"gt_frames_dir", S.gt_frames_dir}},
                   [this] { return std::map<std::string, double>{{"ssim", ssim_sequence(gen_frames(), gt_frames())}}; }});
    const std::vector<std::pair<std::string, OptPath>> globals = {{"gen_embeddings.global", S.gen_embeddings.global},
                                                                  {"gt_embeddings.global", S.gt_embeddings.global}};
    out.push_back({{"dino"}, true, globals, [this] {
                     return std::map<std::string, double>{
                         {"dino", dino_score(read_embedding_file(*s_.gen_embeddings.global),
                                             read_embedding_file(*s_.gt_embeddings.global))}};
                   }});
    out.push_back({{"dreamsim"}, true, globals, [this] {
                     return std::map<std::string, double>{
                         {"dreamsim", dreamsim_score(read_embedding_file(*s_.gen_embeddings.global),
                                                     read_embedding_file(*s_.gt_embeddings.global))}};
                   }});
    out.push_back({{"caption"}, true, {{"judge_outputs.caption", S.judge("caption")}}, [this] {
                     return std::map<std::string, double>{
                         {"caption", caption_score(read_caption_judgment(*s_.judge("caption")))}};
                   }});
    out.push_back({{"sequence_match", "execution_quality"}, false, {{"judge_outputs.sequence_exec", S.judge("sequence_exec")}},
                   [this] {
                     const auto r = sequence_exec_scores(read_sequence_exec_judgment(*s_.judge("sequence_exec")));
                     return std::map<std::string, double>{{"sequence_match", r.sequence}, {"execution_quality", r.execution}};
                   }});
    out.push_back({{"planning_dag"}, false, {{"judge_outputs.planning", S.judge("planning")}}, [this] {
                     const PlanningJudgment j = read_planning_judgment(*s_.judge("planning"));
                     const double nc = dag_node_correctness(j.predicted, j.ground_truth, plan_.node_match);
                     record_.details["planning_node_correctness"] = std::to_string(nc);
                     return std::map<std::string, double>{{"planning_dag", long_horizon_score(nc, j.task_completion)}};
                   }});
    out.push_back({{"mrc_arm", "mrc_obj", "mrc_bg"}, false,
                   {{"gen_embeddings.patch", S.gen_embeddings.patch}, {"masks", mrc_masks}},
                   [this] { return mrc_metrics(); }});
    out.push_back({{"robot_traj_l2norm", "robot_traj_dtw", "robot_traj_frechet"}, true,
                   {{"gen_masks.arm", S.gen_masks.arm}, {"gt_masks.arm", S.gt_masks.arm}},
                   [this] { return trajectory_metrics(true); }});
    out.push_back({{"obj_traj_l2norm", "obj_traj_dtw", "obj_traj_frechet"}, true,
                   {{"gen_masks.obj", S.gen_masks.obj}, {"gt_masks.obj", S.gt_masks.obj}},
                   [this] { return trajectory_metrics(false); }});
    out.push_back({{"physical_score"}, false, {{"judge_outputs.physical", S.judge("physical")}}, [this] {
                     return std::map<std::string, double>{
                         {"physical_score", physical_score(read_physical_judgment(*s_.judge("physical")))}};
                   }});
    out.push_back({{"camera_ate", "camera_rpe"}, true, {{"gen_tracks", S.gen_tracks}, {"gt_tracks", S.gt_tracks}}, [this] {
                     const CameraTrajectory& g = camera(false);
                     const CameraTrajectory& r = camera(true);
                     record_.details["camera_ate_px"] = std::to_string(ate_pixels(g, r));
                     record_.details["camera_rpe_px"] = std::to_string(rpe_pixels(g, r));
                     return std::map<std::string, double>{{"camera_ate", ate(g, r)}, {"camera_rpe", rpe(g, r)}};
                   }});
    return out;
  }

  const Sample& s_;
  const EvaluationPlan& plan_;
  fs::path base_;
  RansacConfig ransac_;
  SampleRecord record_;
  std::optional<FrameSequence> gen_frames_;
  std::optional<FrameSequence> gt_frames_;
  std::optional<CameraTrajectory> gen_camera_;
  std::optional<CameraTrajectory> gt_camera_;
};

}  // namespace

std::string_view to_string(MetricStatus s) noexcept {
  switch (s) {
    case MetricStatus::Ok: return "ok";
    case MetricStatus::Skipped: return "skipped";
    case MetricStatus::Error: return "error";
    case MetricStatus::Pooled: return "pooled";
  }
  return "skipped";
}

void EvaluationPlan::validate() const {
  if (jobs < 1) fail(Errc::ConfigError, "jobs must be at least 1");
  for (const auto& m : metrics_enabled) {
    if (!find_metric(m)) fail(Errc::ConfigError, "unknown metric '" + m + "'");
  }
  for (const auto& info : metric_catalog()) {
    if (enabled(info.name) && !mappings.find(info.name)) {
      fail(Errc::ConfigError, "no mapping for enabled metric '" + std::string(info.name) + "'");
    }
  }
  for (const auto& [g, w] : weights) {
    if (!(w >= 0.0)) fail(Errc::NegativeWeight, "weight for '" + g + "' is negative");
  }
  ransac.validate();
}

bool EvaluationPlan::enabled(std::string_view metric) const {
  return metrics_enabled.empty() ||
         std::find(metrics_enabled.begin(), metrics_enabled.end(), metric) != metrics_enabled.end();
}

const MetricValue& SampleRecord::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.metric == name) return m;
  }
  fail(Errc::ConfigError, "record has no metric '" + std::string(name) + "'");
}

SampleRecord evaluate_sample(const Sample& sample, const EvaluationPlan& plan, const fs::path& base_dir) {
  return SampleEvaluator(sample, plan, base_dir).run();
}

EvaluationResult evaluate_manifest(const Manifest& manifest, const EvaluationPlan& plan) {
  plan.validate();
  const std::size_t n = manifest.samples.size();
  std::vector<std::optional<SampleRecord>> records(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      records[i] = evaluate_sample(manifest.samples[i], plan, manifest.base_dir);
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(plan.jobs), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EvaluationResult result;
  for (const auto& model : manifest.models()) {
    std::vector<SampleRecord> mine;
    for (auto& r : records) {
      if (r && r->model == model) mine.push_back(std::move(*r));
    }
    result.scorecards.push_back(reduce_model(mine, plan));
  }
  return result;
}

std::size_t EvaluationResult::failure_count() const {
  std::size_t n = 0;
  for (const auto& c : scorecards) n += c.failures.size();
  return n;
}

}  // namespace eeval
