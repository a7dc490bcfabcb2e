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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/distribution_metrics.hpp"

namespace eeval {
namespace {

constexpr double kNegativeTolerance = 1e-6;

/// Principal square root of a symmetric PSD matrix. Small negative
/// eigenvalues from round-off are treated as zero.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m, const char* what) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) fail(Errc::SqrtFailure, std::string(what) + ": eigendecomposition did not converge");
  Eigen::VectorXd values = eig.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -kNegativeTolerance * scale) {
      fail(Errc::SqrtFailure, std::string(what) + " is indefinite (eigenvalue " + std::to_string(values[i]) + ")");
    }
    values[i] = std::sqrt(std::max(values[i], 0.0));
  }
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

GaussianStats gaussian_stats(const Eigen::MatrixXd& features) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (n < 2) fail(Errc::TooFewSamples, "need at least 2 feature rows, got " + std::to_string(n));
  if (d < 1) fail(Errc::TooFewSamples, "feature dimension is zero");
  if (!features.allFinite()) fail(Errc::NonFiniteInput, "feature matrix contains NaN or Inf");
  GaussianStats stats;
  stats.n = static_cast<std::size_t>(n);
  stats.mu = features.colwise().mean().transpose();
  const Eigen::MatrixXd centered = features.rowwise() - stats.mu.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose());
  const double lambda = 1e-6 * cov.trace() / static_cast<double>(d);
  cov.diagonal().array() += lambda;
  stats.sigma = std::move(cov);
  return stats;
}

Eigen::MatrixXd stack_clip_features(const std::vector<EmbeddingSequence>& clips) {
  Eigen::Index rows = 0;
  std::size_t dim = 0;
  for (const auto& c : clips) {
    if (!c.is_global()) fail(Errc::DimMismatch, "clip features must have rows = cols = 1");
    if (dim == 0) dim = c.dim();
    if (c.dim() != dim) fail(Errc::DimMismatch, "clip feature dimensions differ");
    rows += static_cast<Eigen::Index>(c.frames());
  }
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(dim));
  Eigen::Index r = 0;
  for (const auto& c : clips) {
    for (std::size_t t = 0; t < c.frames(); ++t, ++r) {
      const auto v = c.vector(t);
      for (std::size_t j = 0; j < dim; ++j) out(r, static_cast<Eigen::Index>(j)) = v[j];
    }
  }
  return out;
}

double fvd(const GaussianStats& real, const GaussianStats& gen) {
  if (real.dim() != gen.dim() || real.sigma.rows() != real.dim() || gen.sigma.rows() != gen.dim()) {
    fail(Errc::DimMismatch, "dimension " + std::to_string(real.dim()) + " vs " + std::to_string(gen.dim()));
  }
  const double mean_term = (real.mu - gen.mu).squaredNorm();
  const Eigen::MatrixXd root_real = sqrt_psd(real.sigma, "real covariance");
  const Eigen::MatrixXd inner = root_real * gen.sigma * root_real;
  const double cross = sqrt_psd(inner, "covariance product").trace();
  const double value = mean_term + real.sigma.trace() + gen.sigma.trace() - 2.0 * cross;
  if (value < 0.0) {
    if (value < -kNegativeTolerance) fail(Errc::SqrtFailure, "negative distance " + std::to_string(value));
    return 0.0;
  }
  return value;
}

}  // namespace eeval
