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
#include <vector>

#include "eeval/core/embedding.hpp"

namespace eeval {

/// 8-bit video frames stored [t][row][col][channel].
struct FrameSequence {
  std::size_t frames = 0;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;

  std::size_t frame_size() const { return static_cast<std::size_t>(height) * width * channels; }
  const std::uint8_t* frame(std::size_t t) const { return pixels.data() + t * frame_size(); }
};

/// Loads a directory of frame_%06d.png files or a raw "WWFR" tensor file.
FrameSequence load_frames(const std::filesystem::path& path);
FrameSequence read_raw_frames(const std::filesystem::path& path);
void write_raw_frames(const std::filesystem::path& path, const FrameSequence& frames);
/// Writes frame_000000.png, frame_000001.png, ... into dir (1 or 3 channels).
void write_png_frames(const std::filesystem::path& dir, const FrameSequence& frames);

/// PSNR assigned to a pair of identical frames.
inline constexpr double kPsnrIdenticalDb = 99.0;

/// Mean PSNR (dB, MAX = 255) over frame pairs aligned to the shorter video.
double psnr_sequence(const FrameSequence& gen, const FrameSequence& gt);

/// Mean SSIM over aligned pairs, computed on luma with an 11x11 Gaussian
/// window (sigma 1.5) over all valid window positions.
double ssim_sequence(const FrameSequence& gen, const FrameSequence& gt);

/// SSIM of one pair of single-channel images given as doubles.
double ssim_luma(const std::vector<double>& x, const std::vector<double>& y, int height, int width);

/// ITU-R BT.601 luma of frame t.
std::vector<double> luma(const FrameSequence& seq, std::size_t t);

/// Mean cosine similarity of per-frame global embeddings.
double dino_score(const EmbeddingSequence& gen, const EmbeddingSequence& gt);

/// Mean of 1 - ||E(x) - E(y)|| over aligned frames.
double dreamsim_score(const EmbeddingSequence& gen, const EmbeddingSequence& gt);

}  // namespace eeval
