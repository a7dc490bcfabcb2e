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
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eeval/core/error.hpp"
#include "eeval/core/resample.hpp"
#include "eeval/trajectory_metrics.hpp"

namespace eeval {
namespace {

void require_non_empty(const Trajectory2D& a, const Trajectory2D& b) {
  if (a.size() == 0 || b.size() == 0) fail(Errc::EmptyTrajectory, "trajectories must contain at least one point");
}

void require_equal_length(const Trajectory2D& a, const Trajectory2D& b) {
  if (a.size() != b.size()) {
    fail(Errc::LengthMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " points");
  }
}

}  // namespace

Trajectory2D centroid_trajectory(const RleMaskSequence& masks) {
  if (masks.size() == 0) fail(Errc::NoForeground, "mask sequence has no frames");
  Trajectory2D traj;
  traj.space = CoordSpace::Pixel;
  traj.width = masks.width;
  traj.height = masks.height;
  std::vector<std::optional<Point2>> raw(masks.size());
  for (std::size_t t = 0; t < masks.size(); ++t) {
    const BitMask m = masks.frame(t);
    double sx = 0.0, sy = 0.0;
    std::size_t count = 0;
    for (int r = 0; r < m.height; ++r) {
      for (int c = 0; c < m.width; ++c) {
        if (m.at(r, c)) {
          sx += c;
          sy += r;
          ++count;
        }
      }
    }
    if (count > 0) raw[t] = Point2{sx / static_cast<double>(count), sy / static_cast<double>(count)};
  }
  const auto first = std::find_if(raw.begin(), raw.end(), [](const auto& p) { return p.has_value(); });
  if (first == raw.end()) fail(Errc::NoForeground, "every frame of the mask sequence is empty");
  Point2 last = **first;
  traj.points.reserve(raw.size());
  for (const auto& p : raw) {
    if (p) last = *p;
    traj.points.push_back(last);
  }
  return traj;
}

Trajectory2D normalize_and_resample(const Trajectory2D& traj, std::size_t target) {
  Trajectory2D out;
  out.space = CoordSpace::Normalized;
  out.width = traj.width;
  out.height = traj.height;
  std::vector<Point2> pts = traj.points;
  if (traj.space == CoordSpace::Pixel) {
    if (traj.width <= 0 || traj.height <= 0) fail(Errc::ShapeMismatch, "pixel trajectory without a frame size");
    for (auto& p : pts) p = {p.x / traj.width, p.y / traj.height};
  }
  out.points = take_indices(pts, uniform_sample_indices(pts.size(), target));
  return out;
}

Trajectory2D correct_camera(const Trajectory2D& traj, const Trajectory2D& camera) {
  require_equal_length(traj, camera);
  Trajectory2D out = traj;
  for (std::size_t t = 0; t < traj.size(); ++t) out.points[t] = traj.points[t] - camera.points[t];
  return out;
}

double l2norm_error(const Trajectory2D& a, const Trajectory2D& b) {
  require_equal_length(a, b);
  if (a.size() == 0) fail(Errc::EmptyTrajectory, "trajectories must contain at least one point");
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) sum += squared_norm(a.points[t] - b.points[t]);
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double dtw_distance(const Trajectory2D& a, const Trajectory2D& b) {
  require_non_empty(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  struct Cell {
    double cost;
    std::size_t steps;
  };
  auto better = [](const Cell& x, const Cell& y) {
    return x.cost < y.cost || (x.cost == y.cost && x.steps < y.steps);
  };
  std::vector<Cell> dp(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(a.points[i], b.points[j]);
      if (i == 0 && j == 0) {
        dp[0] = {d, 1};
        continue;
      }
      Cell best{std::numeric_limits<double>::infinity(), 0};
      if (i > 0 && better(dp[(i - 1) * m + j], best)) best = dp[(i - 1) * m + j];
      if (j > 0 && better(dp[i * m + j - 1], best)) best = dp[i * m + j - 1];
      if (i > 0 && j > 0 && better(dp[(i - 1) * m + j - 1], best)) best = dp[(i - 1) * m + j - 1];
      dp[i * m + j] = {best.cost + d, best.steps + 1};
    }
  }
  const Cell& end = dp.back();
  return end.cost / static_cast<double>(end.steps);
}

double discrete_frechet(const Trajectory2D& a, const Trajectory2D& b) {
  require_non_empty(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<double> dp(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(a.points[i], b.points[j]);
      double prev;
      if (i == 0 && j == 0) {
        prev = 0.0;
      } else if (i == 0) {
        prev = dp[j - 1];
      } else if (j == 0) {
        prev = dp[(i - 1) * m];
      } else {
        prev = std::min({dp[(i - 1) * m + j], dp[i * m + j - 1], dp[(i - 1) * m + j - 1]});
      }
      dp[i * m + j] = std::max(d, prev);
    }
  }
  return dp.back();
}

TrajectoryPairReport compare_trajectories(const Trajectory2D& gen, const Trajectory2D& gt) {
  require_non_empty(gen, gt);
  const std::size_t target = std::min(gen.size(), gt.size());
  const Trajectory2D q_gen = normalize_and_resample(gen, target);
  const Trajectory2D q_gt = normalize_and_resample(gt, target);
  return {l2norm_error(q_gen, q_gt), dtw_distance(q_gen, q_gt), discrete_frechet(q_gen, q_gt), target};
}

}  // namespace eeval
