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

#include <Eigen/Core>
#include <cstddef>

#include "eeval/core/embedding.hpp"

namespace eeval {

/// Gaussian fit of a feature set: mean, shrunk covariance, sample count.
struct GaussianStats {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  std::size_t n = 0;

  Eigen::Index dim() const { return mu.size(); }
};

/// Column means and unbiased covariance of an n x d feature matrix, with
/// lambda * I added (lambda = 1e-6 * trace / d).
GaussianStats gaussian_stats(const Eigen::MatrixXd& features);

/// Stacks the per-clip vectors of global embedding files into one matrix.
Eigen::MatrixXd stack_clip_features(const std::vector<EmbeddingSequence>& clips);

/// Frechet distance between two Gaussians:
/// ||mu_r - mu_g||^2 + Tr(S_r + S_g - 2 (S_r^1/2 S_g S_r^1/2)^1/2).
double fvd(const GaussianStats& real, const GaussianStats& gen);

}  // namespace eeval
