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

#include <cstddef>

#include "eeval/core/geometry.hpp"
#include "eeval/core/rle.hpp"

namespace eeval {

struct TrajectoryPairReport {
  double l2norm = 0.0;
  double dtw = 0.0;  ///< normalized by warping-path length
  double frechet = 0.0;
  std::size_t aligned_length = 0;
};

/// Per-frame foreground centroid (x = column, y = row) in pixels. Empty frames
/// repeat the previous centroid; leading empty frames take the first one.
Trajectory2D centroid_trajectory(const RleMaskSequence& masks);

/// Divides pixel coordinates by (W, H) and keeps `target` evenly spaced points.
Trajectory2D normalize_and_resample(const Trajectory2D& traj, std::size_t target);

/// Pointwise p - c.
Trajectory2D correct_camera(const Trajectory2D& traj, const Trajectory2D& camera);

/// RMS of pointwise distances between equal-length trajectories.
double l2norm_error(const Trajectory2D& a, const Trajectory2D& b);

/// Minimum summed Euclidean cost over monotone warping paths with steps
/// (1,0), (0,1), (1,1), divided by the number of cells on that path. Among
/// minimum-cost paths the shortest is used.
double dtw_distance(const Trajectory2D& a, const Trajectory2D& b);

/// Discrete Frechet (coupling) distance.
double discrete_frechet(const Trajectory2D& a, const Trajectory2D& b);

/// Resamples both normalized trajectories to the shorter length and scores
/// them with all three measures.
TrajectoryPairReport compare_trajectories(const Trajectory2D& gen, const Trajectory2D& gt);

}  // namespace eeval
