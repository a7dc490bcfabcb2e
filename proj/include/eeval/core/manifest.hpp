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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eeval {

/// Region masks for one video. Either region may be absent.
struct RegionMaskPaths {
  std::optional<std::filesystem::path> obj;
  std::optional<std::filesystem::path> arm;
};

/// Embedding files for one video: per-frame global vectors, the patch grid,
/// and clip-level features used for the distribution metric.
struct EmbeddingPaths {
  std::optional<std::filesystem::path> global;
  std::optional<std::filesystem::path> patch;
  std::optional<std::filesystem::path> clip;
};

struct FrameCounts {
  int gen = 0;
  std::optional<int> gt;
};

/// One benchmark entry as evaluated for one model. Paths are stored resolved
/// against the manifest directory.
struct Sample {
  std::string id;
  std::string model;
  std::string instruction;
  std::vector<std::string> dimension_tags;
  int width = 0;
  int height = 0;
  FrameCounts frame_counts;

  std::optional<std::filesystem::path> gen_frames_dir;
  std::optional<std::filesystem::path> gt_frames_dir;
  RegionMaskPaths gen_masks;
  RegionMaskPaths gt_masks;
  EmbeddingPaths gen_embeddings;
  EmbeddingPaths gt_embeddings;
  std::optional<std::filesystem::path> gen_tracks;
  std::optional<std::filesystem::path> gt_tracks;
  std::map<std::string, std::filesystem::path> judge_outputs;

  /// Ground-truth video is available (Generalization entries have none).
  bool has_ground_truth() const { return gt_frames_dir.has_value(); }
  std::optional<std::filesystem::path> judge(const std::string& name) const;
};

struct Manifest {
  std::string dataset_name;
  std::string version;
  std::vector<Sample> samples;
  /// Directory relative paths were resolved against.
  std::filesystem::path base_dir;

  /// Model names in order of first appearance.
  std::vector<std::string> models() const;
};

/// Parses and checks the manifest document. Referenced files are not opened.
Manifest load_manifest(const std::filesystem::path& path);
Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir);

/// Every path a sample references, for existence checks and digests.
std::vector<std::filesystem::path> referenced_paths(const Sample& sample);

/// Path relative to the manifest directory, or as-is when outside it.
std::string display_path(const std::filesystem::path& path, const std::filesystem::path& base_dir);

}  // namespace eeval
