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
#include <complex>
#include <random>
#include <string>

#include "eeval/camera_motion.hpp"
#include "eeval/core/error.hpp"
#include "eeval/core/random.hpp"
#include "eeval/core/resample.hpp"

namespace eeval {
namespace {

using Complex = std::complex<double>;

Complex to_complex(Point2 p) { return {p.x, p.y}; }

SimilarityTransform from_complex(Complex a, Complex b) {
  return {std::abs(a), std::arg(a), {b.real(), b.imag()}};
}

std::vector<Point2> normalize_offsets(const CameraTrajectory& c) {
  if (c.width <= 0 || c.height <= 0) fail(Errc::ShapeMismatch, "camera trajectory without a frame size");
  return c.normalized();
}

}  // namespace

Point2 SimilarityTransform::apply(Point2 p) const {
  const double c = scale * std::cos(angle);
  const double s = scale * std::sin(angle);
  return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y};
}

void RansacConfig::validate() const {
  if (!(inlier_threshold_px > 0) || max_iterations <= 0 || !(min_inlier_fraction > 0) || !(max_drift_px > 0)) {
    fail(Errc::ConfigError, "RANSAC thresholds, iteration count and drift cap must be positive");
  }
}

SimilarityTransform similarity_from_two(Point2 src0, Point2 dst0, Point2 src1, Point2 dst1) {
  const Complex ds = to_complex(src1) - to_complex(src0);
  if (std::abs(ds) < 1e-12) fail(Errc::DegenerateSample, "coincident source points");
  const Complex a = (to_complex(dst1) - to_complex(dst0)) / ds;
  const Complex b = to_complex(dst0) - a * to_complex(src0);
  return from_complex(a, b);
}

SimilarityTransform fit_similarity_least_squares(std::span<const Point2> src, std::span<const Point2> dst,
                                                 const std::vector<bool>& use) {
  Complex ms{}, md{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!use[i]) continue;
    ms += to_complex(src[i]);
    md += to_complex(dst[i]);
    ++n;
  }
  if (n < 2) fail(Errc::TooFewPoints, "least-squares similarity needs 2 correspondences");
  ms /= static_cast<double>(n);
  md /= static_cast<double>(n);
  Complex num{};
  double den = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!use[i]) continue;
    const Complex s = to_complex(src[i]) - ms;
    const Complex d = to_complex(dst[i]) - md;
    num += d * std::conj(s);
    den += std::norm(s);
  }
  if (den < 1e-24) fail(Errc::DegenerateSample, "all source points coincide");
  const Complex a = num / den;
  return from_complex(a, md - a * ms);
}

RansacResult fit_similarity_ransac(std::span<const Point2> src, std::span<const Point2> dst, const RansacConfig& cfg) {
  cfg.validate();
  if (src.size() != dst.size()) fail(Errc::LengthMismatch, "source and destination point counts differ");
  const std::size_t n = src.size();
  if (n < 2) fail(Errc::TooFewPoints, "need at least 2 correspondences, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(src[i].x) || !std::isfinite(src[i].y) || !std::isfinite(dst[i].x) || !std::isfinite(dst[i].y)) {
      fail(Errc::NonFiniteInput, "correspondence " + std::to_string(i) + " is not finite");
    }
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<bool> best_mask;
  std::size_t best_count = 0;
  std::vector<bool> mask(n);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const std::size_t i = draw_index(rng, n);
    std::size_t j = draw_index(rng, n - 1);
    if (j >= i) ++j;
    SimilarityTransform candidate;
    try {
      candidate = similarity_from_two(src[i], dst[i], src[j], dst[j]);
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateSample) continue;
      throw;
    }
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
      mask[k] = distance(candidate.apply(src[k]), dst[k]) < cfg.inlier_threshold_px;
      count += mask[k] ? 1 : 0;
    }
    if (count > best_count) {
      best_count = count;
      best_mask = mask;
    }
  }
  if (best_count < 2 || static_cast<double>(best_count) < cfg.min_inlier_fraction * static_cast<double>(n)) {
    fail(Errc::NoConsensus, "best consensus " + std::to_string(best_count) + " of " + std::to_string(n) + " points");
  }
  return {fit_similarity_least_squares(src, dst, best_mask), best_mask, best_count};
}

std::vector<Point2> CameraTrajectory::normalized() const {
  std::vector<Point2> out;
  out.reserve(offsets.size());
  for (const auto& p : offsets) out.push_back({p.x / width, p.y / height});
  return out;
}

CameraTrajectory accumulate_camera_trajectory(std::span<const Point2> per_step_translations, const RansacConfig& cfg,
                                              int width, int height) {
  CameraTrajectory traj;
  traj.width = width;
  traj.height = height;
  traj.offsets.reserve(per_step_translations.size() + 1);
  Point2 c{0.0, 0.0};
  traj.offsets.push_back(c);
  for (const Point2& t : per_step_translations) {
    Point2 step{-t.x, -t.y};
    const double len = norm(step);
    if (len > cfg.max_drift_px) step = (cfg.max_drift_px / len) * step;
    c = c + step;
    traj.offsets.push_back(c);
  }
  return traj;
}

CameraTrajectory estimate_camera_trajectory(const TrackSet& tracks, const RansacConfig& cfg) {
  if (tracks.frames.empty()) fail(Errc::TooShort, "track file has no frames");
  const auto& ref = tracks.frames.front();
  std::vector<Point2> steps;
  Point2 previous{0.0, 0.0};
  for (std::size_t t = 1; t < tracks.frames.size(); ++t) {
    const RansacResult fit = fit_similarity_ransac(ref, tracks.frames[t], cfg);
    steps.push_back(fit.transform.t - previous);
    previous = fit.transform.t;
  }
  return accumulate_camera_trajectory(steps, cfg, tracks.width, tracks.height);
}

double ate_aligned(std::span<const Point2> gen, std::span<const Point2> gt) {
  if (gen.size() != gt.size() || gen.empty()) fail(Errc::LengthMismatch, "aligned offsets must be equal and non-empty");
  double sum = 0.0;
  for (std::size_t t = 0; t < gen.size(); ++t) sum += squared_norm(gen[t] - gt[t]);
  return std::sqrt(sum / static_cast<double>(gen.size()));
}

double rpe_aligned(std::span<const Point2> gen, std::span<const Point2> gt, std::size_t delta) {
  if (gen.size() != gt.size()) fail(Errc::LengthMismatch, "aligned offsets must be equal");
  if (delta < 1 || gen.size() <= delta) {
    fail(Errc::TooShort, "relative error at offset " + std::to_string(delta) + " needs more than " +
                             std::to_string(delta) + " frames, got " + std::to_string(gen.size()));
  }
  double sum = 0.0;
  const std::size_t count = gen.size() - delta;
  for (std::size_t t = 0; t < count; ++t) {
    const Point2 vg = gen[t + delta] - gen[t];
    const Point2 vt = gt[t + delta] - gt[t];
    sum += squared_norm(vg - vt);
  }
  return std::sqrt(sum / static_cast<double>(count));
}

double ate(const CameraTrajectory& gen, const CameraTrajectory& gt) {
  const auto a = normalize_offsets(gen);
  const auto b = normalize_offsets(gt);
  const auto idx = align_to_shorter(a.size(), b.size());
  return ate_aligned(take_indices(a, idx.first), take_indices(b, idx.second));
}

double rpe(const CameraTrajectory& gen, const CameraTrajectory& gt, std::size_t delta) {
  const auto a = normalize_offsets(gen);
  const auto b = normalize_offsets(gt);
  const auto idx = align_to_shorter(a.size(), b.size());
  return rpe_aligned(take_indices(a, idx.first), take_indices(b, idx.second), delta);
}

double ate_pixels(const CameraTrajectory& gen, const CameraTrajectory& gt) {
  const auto idx = align_to_shorter(gen.size(), gt.size());
  return ate_aligned(take_indices(gen.offsets, idx.first), take_indices(gt.offsets, idx.second));
}

double rpe_pixels(const CameraTrajectory& gen, const CameraTrajectory& gt, std::size_t delta) {
  const auto idx = align_to_shorter(gen.size(), gt.size());
  return rpe_aligned(take_indices(gen.offsets, idx.first), take_indices(gt.offsets, idx.second), delta);
}

}  // namespace eeval
