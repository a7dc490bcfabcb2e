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

#include <cmath>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/region_consistency.hpp"

namespace eeval {
namespace {

constexpr double kWeightEpsilon = 1e-8;

std::vector<std::size_t> bin_edges(std::size_t pixels, std::size_t bins) {
  std::vector<std::size_t> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = (2 * i * pixels + bins) / (2 * bins);
  return edges;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

double consist(const std::vector<double>& a, const std::vector<double>& b) {
  if (is_zero(a) || is_zero(b)) return 0.0;
  return dot(a, b);
}

}  // namespace

std::vector<double> downsample_mask(const BitMask& mask, std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1 || rows > static_cast<std::size_t>(mask.height) ||
      cols > static_cast<std::size_t>(mask.width)) {
    fail(Errc::BadGrid, std::to_string(rows) + "x" + std::to_string(cols) + " grid for a " +
                            std::to_string(mask.height) + "x" + std::to_string(mask.width) + " mask");
  }
  const auto re = bin_edges(static_cast<std::size_t>(mask.height), rows);
  const auto ce = bin_edges(static_cast<std::size_t>(mask.width), cols);
  std::vector<double> out(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t on = 0;
      for (std::size_t r = re[i]; r < re[i + 1]; ++r) {
        for (std::size_t c = ce[j]; c < ce[j + 1]; ++c) on += mask.at(static_cast<int>(r), static_cast<int>(c)) ? 1 : 0;
      }
      out[i * cols + j] = static_cast<double>(on) / static_cast<double>((re[i + 1] - re[i]) * (ce[j + 1] - ce[j]));
    }
  }
  return out;
}

RegionWeights normalize_weights(std::vector<double> pooled, std::size_t rows, std::size_t cols) {
  if (pooled.size() != rows * cols) fail(Errc::ShapeMismatch, "pooled mask does not match the grid");
  double sum = 0.0;
  for (double v : pooled) sum += v;
  if (sum > 0.0) {
    for (double& v : pooled) v /= sum + kWeightEpsilon;
  }
  return {rows, cols, std::move(pooled)};
}

std::vector<double> region_feature(const EmbeddingSequence& grids, std::size_t t, const RegionWeights& weights) {
  if (weights.rows != grids.rows() || weights.cols != grids.cols() || weights.w.size() != grids.rows() * grids.cols()) {
    fail(Errc::ShapeMismatch, "weights " + std::to_string(weights.rows) + "x" + std::to_string(weights.cols) +
                                  " vs patch grid " + std::to_string(grids.rows()) + "x" +
                                  std::to_string(grids.cols()));
  }
  std::vector<double> f(grids.dim(), 0.0);
  for (std::size_t r = 0; r < grids.rows(); ++r) {
    for (std::size_t c = 0; c < grids.cols(); ++c) {
      const double w = weights.at(r, c);
      if (w == 0.0) continue;
      const auto cell = grids.cell(t, r, c);
      for (std::size_t k = 0; k < f.size(); ++k) f[k] += w * cell[k];
    }
  }
  const double n = std::sqrt(dot(f, f));
  if (n > 0.0) {
    for (double& v : f) v /= n;
  }
  return f;
}

double region_consistency(const std::vector<std::vector<double>>& features) {
  const std::size_t frames = features.size();
  if (frames < 2) fail(Errc::TooShort, "region consistency needs at least 2 frames");
  double total = 0.0;
  for (std::size_t t = 1; t < frames; ++t) {
    total += 0.5 * consist(features[0], features[t]) + 0.5 * consist(features[t - 1], features[t]);
  }
  return total / static_cast<double>(frames - 1);
}

MrcReport mrc(const EmbeddingSequence& grids, const RegionMasks& masks) {
  const std::size_t frames = grids.frames();
  if (frames < 2) fail(Errc::TooShort, "region consistency needs at least 2 frames, got " + std::to_string(frames));
  const RleMaskSequence* ref = masks.obj ? &*masks.obj : (masks.arm ? &*masks.arm : nullptr);
  if (ref == nullptr) fail(Errc::SchemaError, "no region masks supplied");
  for (const auto* m : {masks.obj ? &*masks.obj : nullptr, masks.arm ? &*masks.arm : nullptr}) {
    if (m == nullptr) continue;
    if (m->height != ref->height || m->width != ref->width) fail(Errc::ShapeMismatch, "object and arm masks differ in size");
    if (m->size() != frames) {
      fail(Errc::LengthMismatch,
           std::to_string(m->size()) + " mask frames for " + std::to_string(frames) + " embedding frames");
    }
  }
  const std::size_t rows = grids.rows();
  const std::size_t cols = grids.cols();
  std::vector<std::vector<double>> obj(frames), arm(frames), bg(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const BitMask mo = masks.obj ? masks.obj->frame(t) : BitMask(ref->height, ref->width, 0);
    const BitMask ma = masks.arm ? masks.arm->frame(t) : BitMask(ref->height, ref->width, 0);
    BitMask mb(ref->height, ref->width);
    for (std::size_t i = 0; i < mb.bits.size(); ++i) mb.bits[i] = (mo.bits[i] || ma.bits[i]) ? 0 : 1;
    obj[t] = region_feature(grids, t, normalize_weights(downsample_mask(mo, rows, cols), rows, cols));
    arm[t] = region_feature(grids, t, normalize_weights(downsample_mask(ma, rows, cols), rows, cols));
    bg[t] = region_feature(grids, t, normalize_weights(downsample_mask(mb, rows, cols), rows, cols));
  }
  return {region_consistency(obj), region_consistency(arm), region_consistency(bg)};
}

}  // namespace eeval
