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

#include <optional>
#include <vector>

#include "eeval/core/embedding.hpp"
#include "eeval/core/rle.hpp"

namespace eeval {

/// Per-patch weights for one region in one frame. All zero when the region
/// is missing, otherwise summing to one.
struct RegionWeights {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> w;

  double at(std::size_t r, std::size_t c) const { return w[r * cols + c]; }
};

/// Area-average pooling of a binary mask onto a rows x cols grid. Bin
/// boundaries sit at round(i * H / rows) (halves up), so bins differ in size
/// by at most one pixel and none is empty.
std::vector<double> downsample_mask(const BitMask& mask, std::size_t rows, std::size_t cols);

/// Turns a pooled mask into weights w = m / (sum(m) + eps).
RegionWeights normalize_weights(std::vector<double> pooled, std::size_t rows, std::size_t cols);

/// Weighted sum of patch features of frame t, unit-normalized (or zero).
std::vector<double> region_feature(const EmbeddingSequence& grids, std::size_t t, const RegionWeights& weights);

/// Object and arm masks for one video. A missing region is all-zero.
struct RegionMasks {
  std::optional<RleMaskSequence> obj;
  std::optional<RleMaskSequence> arm;
};

struct MrcReport {
  double mrc_obj = 0.0;
  double mrc_arm = 0.0;
  double mrc_bg = 0.0;
};

/// Mean over t = 2..T of 0.5 * Consist(1, t) + 0.5 * Consist(t-1, t) per
/// region; background is the complement of the object/arm union.
MrcReport mrc(const EmbeddingSequence& grids, const RegionMasks& masks);

/// Temporal score of one region given its per-frame normalized features.
double region_consistency(const std::vector<std::vector<double>>& features);

}  // namespace eeval
