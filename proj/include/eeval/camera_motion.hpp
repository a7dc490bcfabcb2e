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
#include <span>
#include <vector>

#include "eeval/core/geometry.hpp"
#include "eeval/core/tracks.hpp"

namespace eeval {

/// x -> scale * R(angle) * x + t.
struct SimilarityTransform {
  double scale = 1.0;
  double angle = 0.0;
  Point2 t;

  Point2 apply(Point2 p) const;
};

struct RansacConfig {
  double inlier_threshold_px = 2.0;
  int max_iterations = 200;
  std::uint64_t seed = 0;
  double min_inlier_fraction = 0.3;
  double max_drift_px = 30.0;

  void validate() const;
};

struct RansacResult {
  SimilarityTransform transform;
  std::vector<bool> inliers;
  std::size_t inlier_count = 0;
};

/// Exact similarity through two correspondences. Throws DegenerateSample when
/// the two source points coincide.
SimilarityTransform similarity_from_two(Point2 src0, Point2 dst0, Point2 src1, Point2 dst1);

/// Least-squares similarity over the selected correspondences.
SimilarityTransform fit_similarity_least_squares(std::span<const Point2> src, std::span<const Point2> dst,
                                                 const std::vector<bool>& use);

/// RANSAC over 2-point minimal samples drawn from a generator seeded with
/// cfg.seed; the best consensus set is refit by least squares.
RansacResult fit_similarity_ransac(std::span<const Point2> src, std::span<const Point2> dst, const RansacConfig& cfg);

/// Cumulative camera offsets in pixels, starting at (0, 0).
struct CameraTrajectory {
  std::vector<Point2> offsets;
  int width = 0;
  int height = 0;

  std::size_t size() const { return offsets.size(); }
  /// Offsets divided by (W, H).
  std::vector<Point2> normalized() const;
};

/// Camera steps are the negated background translations, each capped at
/// cfg.max_drift_px in magnitude, summed from (0, 0).
CameraTrajectory accumulate_camera_trajectory(std::span<const Point2> per_step_translations, const RansacConfig& cfg,
                                              int width = 0, int height = 0);

/// Fits every frame's tracked points against frame 0 and differences the
/// reference-to-frame translations into per-step background motion.
CameraTrajectory estimate_camera_trajectory(const TrackSet& tracks, const RansacConfig& cfg);

/// Absolute trajectory error on normalized offsets, aligned to the shorter path.
double ate(const CameraTrajectory& gen, const CameraTrajectory& gt);
/// Relative pose error at frame offset delta on normalized offsets.
double rpe(const CameraTrajectory& gen, const CameraTrajectory& gt, std::size_t delta = 1);

/// Same measures in raw pixels, reported alongside the normalized ones.
double ate_pixels(const CameraTrajectory& gen, const CameraTrajectory& gt);
double rpe_pixels(const CameraTrajectory& gen, const CameraTrajectory& gt, std::size_t delta = 1);

/// RMS of pointwise differences between already aligned offset lists.
double ate_aligned(std::span<const Point2> gen, std::span<const Point2> gt);
double rpe_aligned(std::span<const Point2> gen, std::span<const Point2> gt, std::size_t delta);

}  // namespace eeval
