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

// Regenerates the synthetic fixtures under tests/fixtures. Output is a pure
// function of the constants below; rerunning rewrites identical bytes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <string>

#include "eeval/core/embedding.hpp"
#include "eeval/core/io.hpp"
#include "eeval/core/rle.hpp"
#include "eeval/core/tracks.hpp"
#include "eeval/engine.hpp"
#include "eeval/frame_metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace eeval;

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr int kWidth = 32;
constexpr int kHeight = 24;
constexpr int kGtFrames = 12;

/// Motion of one synthetic episode.
struct Episode {
  double obj_x0, obj_y0, obj_dx, obj_dy;
  double arm_x0, arm_y0, arm_dx, arm_dy;
  double cam_dx;  ///< total camera pan in pixels over the clip
};

struct Variant {
  int frames;
  double motion_error;  ///< scales deviation from the reference motion
  double pixel_noise;
  double feature_noise;
  std::uint64_t seed;
};

struct Box {
  int x, y, w, h;
};

double lerp_t(int t, int frames) { return frames > 1 ? static_cast<double>(t) / (frames - 1) : 0.0; }

Box obj_box(const Episode& e, const Variant& v, int t) {
  const double s = lerp_t(t, v.frames);
  const double wobble = v.motion_error * std::sin(3.0 * s);
  return {static_cast<int>(std::lround(e.obj_x0 + e.obj_dx * s + 3.0 * wobble)),
          static_cast<int>(std::lround(e.obj_y0 + e.obj_dy * s + 2.0 * wobble)), 6, 5};
}

Box arm_box(const Episode& e, const Variant& v, int t) {
  const double s = lerp_t(t, v.frames);
  const double wobble = v.motion_error * std::cos(2.0 * s);
  return {static_cast<int>(std::lround(e.arm_x0 + e.arm_dx * s + 2.0 * wobble)),
          static_cast<int>(std::lround(e.arm_y0 + e.arm_dy * s - 2.0 * wobble)), 4, 9};
}

double camera_x(const Episode& e, const Variant& v, int t) {
  return e.cam_dx * lerp_t(t, v.frames) * (1.0 + 0.5 * v.motion_error);
}

bool inside(const Box& b, int row, int col) { return col >= b.x && col < b.x + b.w && row >= b.y && row < b.y + b.h; }

FrameSequence render(const Episode& e, const Variant& v) {
  Rng rng(v.seed);
  FrameSequence seq;
  seq.frames = static_cast<std::size_t>(v.frames);
  seq.height = kHeight;
  seq.width = kWidth;
  seq.channels = 3;
  for (int t = 0; t < v.frames; ++t) {
    const Box obj = obj_box(e, v, t);
    const Box arm = arm_box(e, v, t);
    const double cam = camera_x(e, v, t);
    for (int r = 0; r < kHeight; ++r) {
      for (int c = 0; c < kWidth; ++c) {
        const double wx = c + cam;
        double rgb[3] = {90 + 60 * std::sin(wx * 0.35), 110 + 50 * std::cos(r * 0.4), 140 + 30 * std::sin((wx + r) * 0.2)};
        if (inside(obj, r, c)) {
          rgb[0] = 220, rgb[1] = 40, rgb[2] = 40;
        }
        if (inside(arm, r, c)) {
          rgb[0] = 60, rgb[1] = 60, rgb[2] = 70;
        }
        for (double ch : rgb) {
          const double noisy = ch + v.pixel_noise * rng.normal();
          seq.pixels.push_back(static_cast<std::uint8_t>(std::clamp(std::lround(noisy), 0L, 255L)));
        }
      }
    }
  }
  return seq;
}

RleMaskSequence masks(const Episode& e, const Variant& v, bool arm) {
  RleMaskSequence seq;
  seq.height = kHeight;
  seq.width = kWidth;
  for (int t = 0; t < v.frames; ++t) {
    const Box b = arm ? arm_box(e, v, t) : obj_box(e, v, t);
    BitMask m(kHeight, kWidth);
    for (int r = 0; r < kHeight; ++r) {
      for (int c = 0; c < kWidth; ++c) m.set(r, c, inside(b, r, c));
    }
    seq.frames.push_back(encode_rle(m));
  }
  return seq;
}

TrackSet tracks(const Episode& e, const Variant& v) {
  Rng rng(v.seed + 17);
  TrackSet ts;
  ts.width = kWidth;
  ts.height = kHeight;
  std::vector<Point2> base;
  for (int i = 0; i < 4; ++i) {
    base.push_back({1.0 + 9.0 * i, 1.0});
    base.push_back({1.0 + 9.0 * i, 22.0});
  }
  base.push_back({1.0, 8.0});
  base.push_back({1.0, 15.0});
  base.push_back({30.0, 8.0});
  base.push_back({30.0, 15.0});
  for (int t = 0; t < v.frames; ++t) {
    const double cam = camera_x(e, v, t);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < base.size(); ++i) {
      Point2 p{base[i].x - cam + 0.02 * rng.normal(), base[i].y + 0.02 * rng.normal()};
      if (t > 0 && i % 6 == 5) p = {rng.uniform(0, kWidth), rng.uniform(0, kHeight)};
      pts.push_back(p);
    }
    ts.frames.push_back(std::move(pts));
  }
  return ts;
}

std::vector<float> unit(std::vector<double> v) {
  double n = 0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  std::vector<float> out;
  for (double x : v) out.push_back(static_cast<float>(x / n));
  return out;
}

EmbeddingSequence global_embedding(const Episode& e, const Variant& v, int episode_index) {
  Rng rng(v.seed + 29);
  constexpr int d = 16;
  std::vector<float> data;
  for (int t = 0; t < v.frames; ++t) {
    const double s = lerp_t(t, v.frames);
    std::vector<double> f(d);
    for (int k = 0; k < d; ++k) {
      f[k] = std::sin(0.7 * k + 1.3 * episode_index + 2.0 * s + e.obj_dx * 0.01) + v.feature_noise * rng.normal();
    }
    const auto u = unit(f);
    data.insert(data.end(), u.begin(), u.end());
  }
  return EmbeddingSequence(static_cast<std::size_t>(v.frames), 1, 1, d, std::move(data));
}

EmbeddingSequence patch_embedding(const Episode& e, const Variant& v) {
  Rng rng(v.seed + 31);
  constexpr int rows = 4, cols = 4, d = 8;
  std::vector<float> data;
  for (int t = 0; t < v.frames; ++t) {
    const Box obj = obj_box(e, v, t);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const bool has_obj = inside({obj.x - 8, obj.y - 6, obj.w + 8, obj.h + 6}, r * 6, c * 8);
        for (int k = 0; k < d; ++k) {
          double x = std::cos(0.9 * k + r + 2.0 * c) + (has_obj ? 0.5 * std::sin(k + 0.3 * t) : 0.0);
          x += v.feature_noise * (1.0 + 0.2 * t) * rng.normal();
          data.push_back(static_cast<float>(x));
        }
      }
    }
  }
  return EmbeddingSequence(static_cast<std::size_t>(v.frames), rows, cols, d, std::move(data));
}

EmbeddingSequence clip_embedding(int episode_index, double shift, double noise, std::uint64_t seed) {
  Rng rng(seed + 37);
  constexpr int clips = 4, d = 6;
  std::vector<float> data;
  for (int c = 0; c < clips; ++c) {
    for (int k = 0; k < d; ++k) {
      data.push_back(static_cast<float>(std::sin(1.1 * k + 0.8 * c + episode_index) + shift + noise * rng.normal()));
    }
  }
  return EmbeddingSequence(clips, 1, 1, d, std::move(data));
}

void write_json(const fs::path& p, const ordered_json& j) { write_file_atomic(p, j.dump(2) + "\n"); }

ordered_json plan_dag(const std::vector<std::array<const char*, 2>>& nodes) {
  ordered_json dag;
  dag["nodes"] = ordered_json::array();
  dag["edges"] = ordered_json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    dag["nodes"].push_back({{"skill", nodes[i][0]}, {"object", nodes[i][1]}, {"args", ordered_json::array()}});
    if (i > 0) dag["edges"].push_back({i - 1, i});
  }
  return dag;
}

struct ModelProfile {
  std::string name;
  double motion_error;
  double pixel_noise;
  double feature_noise;
  int gen_frames;
  double clip_shift;
  int quality;  ///< 0 (best) or 1, selects judge outputs
};

const std::vector<Episode> kEpisodes = {
    {4, 9, 16, 2, 20, 2, -8, 6, 2.0},
    {22, 14, -14, -4, 6, 3, 10, 5, -1.5},
    {8, 4, 10, 12, 24, 10, -12, -4, 1.0},
};

ordered_json sample_entry(const std::string& id, const std::string& model, const std::string& instruction) {
  ordered_json s;
  s["id"] = id;
  s["model"] = model;
  s["instruction"] = instruction;
  return s;
}

void synthetic_set(const fs::path& root) {
  const std::vector<ModelProfile> models = {
      {"model_a", 0.1, 4.0, 0.05, 10, 0.1, 0},
      {"model_b", 0.6, 12.0, 0.2, 12, 0.5, 1},
  };
  const std::vector<std::string> instructions = {"move the red block to the right", "push the box toward the arm",
                                                 "slide the block down"};
  ordered_json samples = ordered_json::array();
  std::uint64_t seed = 100;
  for (const auto& m : models) {
    for (std::size_t i = 0; i < kEpisodes.size(); ++i) {
      const Episode& e = kEpisodes[i];
      const std::string id = m.name + "_task" + std::to_string(i + 1);
      const Variant gt{kGtFrames, 0.0, 0.0, 0.0, seed++};
      const Variant gen{m.gen_frames, m.motion_error, m.pixel_noise, m.feature_noise, seed++};
      const fs::path dir = root / id;
      fs::create_directories(dir);
      if (m.name == "model_a" && i == 0) write_png_frames(dir / "gen_frames", render(e, gen));
      else write_raw_frames(dir / "gen.wwfr", render(e, gen));
      write_raw_frames(dir / "gt.wwfr", render(e, gt));
      write_rle_file(dir / "gen_obj.json", masks(e, gen, false));
      write_rle_file(dir / "gen_arm.json", masks(e, gen, true));
      write_rle_file(dir / "gt_obj.json", masks(e, gt, false));
      write_rle_file(dir / "gt_arm.json", masks(e, gt, true));
      write_embedding_file(dir / "gen_global.wweb", global_embedding(e, gen, static_cast<int>(i)));
      write_embedding_file(dir / "gt_global.wweb", global_embedding(e, gt, static_cast<int>(i)));
      write_embedding_file(dir / "gen_patch.wweb", patch_embedding(e, gen));
      write_embedding_file(dir / "gen_clip.wweb", clip_embedding(static_cast<int>(i), m.clip_shift, 0.3, gen.seed));
      write_embedding_file(dir / "gt_clip.wweb", clip_embedding(static_cast<int>(i), 0.0, 0.3, gt.seed));
      write_track_file(dir / "gen_tracks.json", tracks(e, gen));
      write_track_file(dir / "gt_tracks.json", tracks(e, gt));

      const bool good = m.quality == 0;
      write_json(dir / "caption.json", {{"initial_state", "Score = 1 - Reason: block visible at the start"},
                                        {"processing_state", good ? 1.0 : 0.5},
                                        {"final_state", good ? 1.0 : 0.5},
                                        {"action", good ? 1.0 : 0.5},
                                        {"object", 1.0},
                                        {"overall", good ? 1.0 : 0.7}});
      ordered_json exec = ordered_json::array();
      exec.push_back({{"pair", "push-block"}, {"score", good ? 5 : 3}});
      exec.push_back({{"pair", "release-block"}, {"score", good ? 4 : 2}});
      write_json(dir / "sequence_exec.json", {{"instruction_sequence", {"push block", "release block"}},
                                              {"video_sequence", {"push block", "release block"}},
                                              {"sequence_match_score", good ? 1.0 : 0.5},
                                              {"execution_quality", exec}});
      ordered_json phys;
      const int base = good ? 4 : 2;
      phys["object_interaction"] = {{"score", base + 1}, {"comment", "contact looks plausible"}};
      phys["physical_properties"] = {{"score", base}, {"comment", "block stays rigid"}};
      phys["temporal_consistency"] = {{"score", base}, {"comment", "no popping"}};
      phys["lighting_and_reflections"] = {{"score", base}, {"comment", "consistent shading"}};
      phys["fluids_and_particles"] = {{"score", nullptr}, {"comment", "no fluids"}};
      phys["local_anomalies"] = {{"score", base + (good ? 0 : -1)}, {"comment", "minor edge flicker"}};
      write_json(dir / "physical.json", phys);
      const auto gt_dag = plan_dag({{"reach", "block"}, {"grasp", "block"}, {"move", "block"}, {"release", "block"}});
      const auto pred_dag = good ? gt_dag : plan_dag({{"reach", "block"}, {"push", "box"}, {"release", "Block"}});
      write_json(dir / "planning.json",
                 {{"predicted_dag", pred_dag}, {"ground_truth_dag", gt_dag}, {"task_completion", good ? 0.9 : 0.4}});

      ordered_json s = sample_entry(id, m.name, instructions[i]);
      s["dimension_tags"] = {"planning/long-horizon"};
      s["width"] = kWidth;
      s["height"] = kHeight;
      s["frame_counts"] = {{"gen", m.gen_frames}, {"gt", kGtFrames}};
      const std::string rel = id + "/";
      s["gen_frames_dir"] = rel + (m.name == "model_a" && i == 0 ? "gen_frames" : "gen.wwfr");
      s["gt_frames_dir"] = rel + "gt.wwfr";
      s["gen_masks"] = {{"obj", rel + "gen_obj.json"}, {"arm", rel + "gen_arm.json"}};
      s["gt_masks"] = {{"obj", rel + "gt_obj.json"}, {"arm", rel + "gt_arm.json"}};
      s["gen_embeddings"] = {{"global", rel + "gen_global.wweb"}, {"patch", rel + "gen_patch.wweb"}, {"clip", rel + "gen_clip.wweb"}};
      s["gt_embeddings"] = {{"global", rel + "gt_global.wweb"}, {"clip", rel + "gt_clip.wweb"}};
      s["gen_tracks"] = rel + "gen_tracks.json";
      s["gt_tracks"] = rel + "gt_tracks.json";
      s["judge_outputs"] = {{"caption", rel + "caption.json"},
                            {"sequence_exec", rel + "sequence_exec.json"},
                            {"physical", rel + "physical.json"},
                            {"planning", rel + "planning.json"}};
      samples.push_back(std::move(s));
    }

    // Generalization entry: no ground-truth video.
    const Episode e{10, 6, 8, 8, 2, 12, 12, -4, 0.0};
    const Variant gen{m.gen_frames, m.motion_error, m.pixel_noise, m.feature_noise, seed++};
    const std::string id = m.name + "_novel";
    const fs::path dir = root / id;
    fs::create_directories(dir);
    write_raw_frames(dir / "gen.wwfr", render(e, gen));
    write_rle_file(dir / "gen_obj.json", masks(e, gen, false));
    write_rle_file(dir / "gen_arm.json", masks(e, gen, true));
    write_embedding_file(dir / "gen_patch.wweb", patch_embedding(e, gen));
    const bool good = m.quality == 0;
    write_json(dir / "sequence_exec.json",
               {{"sequence_match_score", good ? 0.75 : 0.25}, {"execution_quality", good ? ordered_json{4, 5, 4} : ordered_json{2, 3, 1}}});
    ordered_json phys;
    for (const char* k : {"object_interaction", "physical_properties", "temporal_consistency", "lighting_and_reflections",
                          "fluids_and_particles", "local_anomalies"}) {
      phys[k] = {{"score", good ? 4 : 3}, {"comment", ""}};
    }
    write_json(dir / "physical.json", phys);
    ordered_json s = sample_entry(id, m.name, "arrange the unseen objects by size");
    s["dimension_tags"] = {"generalization/novel-object"};
    s["width"] = kWidth;
    s["height"] = kHeight;
    s["frame_counts"] = {{"gen", m.gen_frames}};
    s["gen_frames_dir"] = id + "/gen.wwfr";
    s["gen_masks"] = {{"obj", id + "/gen_obj.json"}, {"arm", id + "/gen_arm.json"}};
    s["gen_embeddings"] = {{"patch", id + "/gen_patch.wweb"}};
    s["judge_outputs"] = {{"sequence_exec", id + "/sequence_exec.json"}, {"physical", id + "/physical.json"}};
    samples.push_back(std::move(s));
  }
  write_json(root / "manifest.json", {{"dataset_name", "synthetic-two-model"}, {"version", "1"}, {"samples", samples}});

  // Same set with one damaged embedding file.
  const fs::path bad = root / "corrupt" / "gen_global_truncated.wweb";
  fs::create_directories(bad.parent_path());
  const auto bytes = read_binary_file(root / "model_b_task2" / "gen_global.wweb");
  write_file_atomic(bad, std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size() / 2));
  for (auto& s : samples) {
    if (s["id"] == "model_b_task2") s["gen_embeddings"]["global"] = "corrupt/gen_global_truncated.wweb";
  }
  write_json(root / "manifest_corrupt.json",
             {{"dataset_name", "synthetic-two-model"}, {"version", "1-corrupt"}, {"samples", samples}});
}

void calibration_set(const fs::path& root) {
  fs::create_directories(root);
  Rng rng(2024);
  std::string values = "id,metric,value\n";
  std::string ratings = "model_or_sample_id,rating,rater_id\n";
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform();
    const double h = x * x + 0.01 * rng.normal();
    char buf[128];
    std::snprintf(buf, sizeof buf, "v%03d,dino,%.17g\n", i, x);
    values += buf;
    std::snprintf(buf, sizeof buf, "v%03d,%.17g,r1\n", i, h);
    ratings += buf;
  }
  write_file_atomic(root / "values.csv", values);
  write_file_atomic(root / "ratings.csv", ratings);
}

void report_set(const fs::path& root) {
  fs::create_directories(root / "scorecards");
  Rng rng(77);
  const EvaluationPlan plan;
  std::string ratings = "model_or_sample_id,rating,rater_id\n";
  std::string afc = "model,sample_id,rater_id,judged_real\n";
  for (int m = 0; m < 8; ++m) {
    ScoreCard card;
    card.model = "model_" + std::string(1, static_cast<char>('a' + m));
    const double quality = 30.0 + 6.0 * m;
    card.group_means = {{"quality", quality + 3.0 * rng.normal()},
                        {"instruction", quality + 3.0 * rng.normal()},
                        {"physical", quality + 3.0 * rng.normal()},
                        {"planning", quality + 3.0 * rng.normal()}};
    double sum = 0;
    for (const auto& [g, v] : card.group_means) sum += v;
    card.overall = sum / 4.0;
    write_file_atomic(root / "scorecards" / scorecard_filename(card.model),
                      scorecard_json(card, plan, {"report-fixture", "1"}));
    for (int r = 0; r < 15; ++r) {
      const double rating = std::clamp(std::round(6.0 + 1.2 * m + 2.0 * rng.normal()), 4.0, 20.0);
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s,%g,rater%02d\n", card.model.c_str(), rating, r);
      ratings += buf;
    }
    for (int s = 0; s < 5; ++s) {
      for (int r = 0; r < 4; ++r) {
        const bool real = rng.uniform() < 0.1 + 0.08 * m;
        afc += card.model + ",clip" + std::to_string(s) + ",rater" + std::to_string(r) + "," + (real ? "1" : "0") + "\n";
      }
    }
  }
  write_file_atomic(root / "ratings.csv", ratings);
  write_file_atomic(root / "afc_log.csv", afc);
}

void embedding_fixture(const fs::path& root) {
  fs::create_directories(root);
  std::vector<float> data;
  for (int i = 0; i < 4 * 8; ++i) data.push_back(static_cast<float>(i % 8 == i / 8 ? 1.0 : 0.125 * (i % 5)));
  write_embedding_file(root / "global_t4_d8.wweb", EmbeddingSequence(4, 1, 1, 8, std::move(data)));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: eeval_fixture_gen FIXTURE_DIR\n";
    return 2;
  }
  const fs::path root = argv[1];
  try {
    embedding_fixture(root / "embeddings");
    synthetic_set(root / "synthetic");
    calibration_set(root / "calibration");
    report_set(root / "report");
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
