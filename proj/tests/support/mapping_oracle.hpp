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

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

namespace eeval::testing {

enum class RefFamily { Simple, Gamma, Logit, Tanh };

struct RefRow {
  std::string_view metric;
  RefFamily family;
  double theta;  ///< unused for Simple
};

/// Reference per-metric mapping parameters, transcribed independently of the
/// library defaults.
inline constexpr std::array<RefRow, 21> kReferenceTable = {{
    {"fvd", RefFamily::Gamma, 1.52},
    {"psnr", RefFamily::Tanh, 4.71},
    {"ssim", RefFamily::Gamma, 0.61},
    {"dino", RefFamily::Gamma, 3.06},
    {"dreamsim", RefFamily::Gamma, 2.94},
    {"caption", RefFamily::Gamma, 0.12},
    {"sequence_match", RefFamily::Gamma, 2.45},
    {"execution_quality", RefFamily::Gamma, 2.97},
    {"planning_dag", RefFamily::Simple, 0},
    {"mrc_arm", RefFamily::Gamma, 2.93},
    {"mrc_obj", RefFamily::Tanh, 4.93},
    {"mrc_bg", RefFamily::Gamma, 3.94},
    {"robot_traj_l2norm", RefFamily::Gamma, 2.86},
    {"robot_traj_dtw", RefFamily::Gamma, 1.87},
    {"robot_traj_frechet", RefFamily::Gamma, 4.00},
    {"obj_traj_l2norm", RefFamily::Gamma, 1.27},
    {"obj_traj_dtw", RefFamily::Gamma, 2.99},
    {"obj_traj_frechet", RefFamily::Gamma, 3.52},
    {"physical_score", RefFamily::Simple, 0},
    {"camera_ate", RefFamily::Simple, 0},
    {"camera_rpe", RefFamily::Simple, 0},
}};

/// Closed-form mapped score in extended precision.
inline long double reference_mapping(long double x, RefFamily family, long double theta) {
  switch (family) {
    case RefFamily::Simple:
      return 100.0L * x;
    case RefFamily::Gamma:
      return 100.0L * std::pow(x, theta);
    case RefFamily::Logit: {
      const long double eps = 1e-6L;
      const long double c = std::clamp(x, eps, 1.0L - eps);
      const long double z = std::log(c / (1.0L - c)) / theta;
      return 100.0L / (1.0L + std::exp(-z));
    }
    case RefFamily::Tanh:
      return 50.0L * (std::tanh(theta * (2.0L * x - 1.0L)) + 1.0L);
  }
  return 0.0L;
}

}  // namespace eeval::testing
