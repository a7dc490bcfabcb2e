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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "eeval/distribution_metrics.hpp"
#include "support/test_rng.hpp"

namespace eeval::testing {

inline Eigen::MatrixXd random_psd(int d, TestRng& rng) {
  Eigen::MatrixXd a(d, d + 2);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.normal();
  }
  return a * a.transpose() / (d + 2) + 0.01 * Eigen::MatrixXd::Identity(d, d);
}

/// Trace of sqrt(S_r S_g) from the eigenvalues of the (non-symmetric) product.
inline double fvd_oracle(const GaussianStats& r, const GaussianStats& g) {
  const Eigen::MatrixXd prod = r.sigma * g.sigma;
  Eigen::EigenSolver<Eigen::MatrixXd> es(prod);
  double tr_sqrt = 0.0;
  for (int i = 0; i < prod.rows(); ++i) tr_sqrt += std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  return (r.mu - g.mu).squaredNorm() + r.sigma.trace() + g.sigma.trace() - 2.0 * tr_sqrt;
}

}  // namespace eeval::testing
