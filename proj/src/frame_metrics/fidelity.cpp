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
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/resample.hpp"
#include "eeval/frame_metrics.hpp"

namespace eeval {
namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

void check_same_shape(const FrameSequence& a, const FrameSequence& b) {
  if (a.height != b.height || a.width != b.width || a.channels != b.channels) {
    fail(Errc::ShapeMismatch, std::to_string(a.height) + "x" + std::to_string(a.width) + "x" +
                                  std::to_string(a.channels) + " vs " + std::to_string(b.height) + "x" +
                                  std::to_string(b.width) + "x" + std::to_string(b.channels));
  }
  if (a.frames == 0 || b.frames == 0) fail(Errc::ShapeMismatch, "empty frame sequence");
}

std::array<double, kWindow> gaussian_kernel() {
  std::array<double, kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    k[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

/// Separable Gaussian filter over valid positions only.
std::vector<double> filter_valid(const std::vector<double>& img, int height, int width) {
  static const auto k = gaussian_kernel();
  const int out_w = width - kWindow + 1;
  const int out_h = height - kWindow + 1;
  std::vector<double> horiz(static_cast<std::size_t>(height) * out_w);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[i] * img[static_cast<std::size_t>(r) * width + c + i];
      horiz[static_cast<std::size_t>(r) * out_w + c] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[i] * horiz[static_cast<std::size_t>(r + i) * out_w + c];
      out[static_cast<std::size_t>(r) * out_w + c] = acc;
    }
  }
  return out;
}

double cosine(std::span<const float> u, std::span<const float> v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    nu += static_cast<double>(u[i]) * u[i];
    nv += static_cast<double>(v[i]) * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

void check_global_pair(const EmbeddingSequence& a, const EmbeddingSequence& b) {
  if (!a.is_global() || !b.is_global()) fail(Errc::DimMismatch, "expected per-frame global embeddings (rows = cols = 1)");
  if (a.dim() != b.dim()) {
    fail(Errc::DimMismatch, "feature dimension " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

std::vector<double> luma(const FrameSequence& seq, std::size_t t) {
  const std::size_t n = static_cast<std::size_t>(seq.height) * seq.width;
  std::vector<double> out(n);
  const std::uint8_t* p = seq.frame(t);
  if (seq.channels == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = p[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.299 * p[3 * i] + 0.587 * p[3 * i + 1] + 0.114 * p[3 * i + 2];
  }
  return out;
}

double psnr_sequence(const FrameSequence& gen, const FrameSequence& gt) {
  check_same_shape(gen, gt);
  const auto align = align_to_shorter(gen.frames, gt.frames);
  const std::size_t n = gen.frame_size();
  double total = 0.0;
  for (std::size_t k = 0; k < align.first.size(); ++k) {
    const std::uint8_t* a = gen.frame(align.first[k]);
    const std::uint8_t* b = gt.frame(align.second[k]);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
      sse += d * d;
    }
    const double mse = sse / static_cast<double>(n);
    total += mse == 0.0 ? kPsnrIdenticalDb : 10.0 * std::log10(255.0 * 255.0 / mse);
  }
  return total / static_cast<double>(align.first.size());
}

double ssim_luma(const std::vector<double>& x, const std::vector<double>& y, int height, int width) {
  if (std::min(height, width) < kWindow) {
    fail(Errc::FrameTooSmall, std::to_string(height) + "x" + std::to_string(width) + " is below the 11x11 window");
  }
  const std::size_t n = x.size();
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, height, width);
  const auto my = filter_valid(y, height, width);
  const auto sxx = filter_valid(xx, height, width);
  const auto syy = filter_valid(yy, height, width);
  const auto sxy = filter_valid(xy, height, width);
  double sum = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cxy = sxy[i] - mx[i] * my[i];
    sum += ((2.0 * mx[i] * my[i] + kC1) * (2.0 * cxy + kC2)) /
           ((mx[i] * mx[i] + my[i] * my[i] + kC1) * (vx + vy + kC2));
  }
  return sum / static_cast<double>(mx.size());
}

double ssim_sequence(const FrameSequence& gen, const FrameSequence& gt) {
  check_same_shape(gen, gt);
  if (std::min(gen.height, gen.width) < kWindow) {
    fail(Errc::FrameTooSmall,
         std::to_string(gen.height) + "x" + std::to_string(gen.width) + " is below the 11x11 window");
  }
  const auto align = align_to_shorter(gen.frames, gt.frames);
  double total = 0.0;
  for (std::size_t k = 0; k < align.first.size(); ++k) {
    total += ssim_luma(luma(gen, align.first[k]), luma(gt, align.second[k]), gen.height, gen.width);
  }
  return total / static_cast<double>(align.first.size());
}

double dino_score(const EmbeddingSequence& gen, const EmbeddingSequence& gt) {
  check_global_pair(gen, gt);
  const auto align = align_to_shorter(gen.frames(), gt.frames());
  double total = 0.0;
  for (std::size_t k = 0; k < align.first.size(); ++k) {
    total += cosine(gen.vector(align.first[k]), gt.vector(align.second[k]));
  }
  return total / static_cast<double>(align.first.size());
}

double dreamsim_score(const EmbeddingSequence& gen, const EmbeddingSequence& gt) {
  check_global_pair(gen, gt);
  const auto align = align_to_shorter(gen.frames(), gt.frames());
  double total = 0.0;
  for (std::size_t k = 0; k < align.first.size(); ++k) {
    const auto u = gen.vector(align.first[k]);
    const auto v = gt.vector(align.second[k]);
    double sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = static_cast<double>(u[i]) - static_cast<double>(v[i]);
      sq += d * d;
    }
    total += 1.0 - std::sqrt(sq);
  }
  return total / static_cast<double>(align.first.size());
}

}  // namespace eeval
