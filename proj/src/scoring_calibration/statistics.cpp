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
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/random.hpp"
#include "eeval/scoring_calibration.hpp"

namespace eeval {
namespace {

constexpr double kFisherClamp = 1.0 - 1e-7;
constexpr double kTieTolerance = 1e-9;

void check_pair(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(Errc::LengthMismatch, "correlation inputs differ in length");
  if (x.size() < 3) fail(Errc::TooFewPoints, "correlation needs at least 3 points");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) fail(Errc::NonFiniteInput, "correlation input is not finite");
  }
}

/// Pearson without the length checks; nullopt when either side is constant.
std::optional<double> raw_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  const auto r = raw_pearson(x, y);
  if (!r) fail(Errc::ConstantInput, "Pearson correlation of a constant series");
  return *r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  check_pair(x, y);
  const auto r = raw_pearson(average_ranks(x), average_ranks(y));
  if (!r) fail(Errc::ConstantInput, "Spearman correlation of a constant series");
  return *r;
}

Correlation correlations(const std::vector<double>& x, const std::vector<double>& y) {
  return {pearson(x, y), spearman(x, y)};
}

void FitOptions::validate() const {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) fail(Errc::ConfigError, "grid step must be positive");
  if (!(grid_max >= grid_step) || !std::isfinite(grid_max)) fail(Errc::ConfigError, "grid max must be at least the step");
  if (folds < 2) fail(Errc::ConfigError, "calibration needs at least 2 folds");
}

std::vector<double> theta_grid(const FitOptions& opts) {
  opts.validate();
  const auto count = static_cast<std::size_t>(std::llround(opts.grid_max / opts.grid_step));
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) grid.push_back(static_cast<double>(k) * opts.grid_step);
  return grid;
}

std::vector<std::vector<std::size_t>> make_fold_plan(std::size_t n, int folds, std::uint64_t seed) {
  if (folds < 2) fail(Errc::ConfigError, "calibration needs at least 2 folds");
  const auto k = static_cast<std::size_t>(folds);
  if (n < k * 2) fail(Errc::TooFewPoints, std::to_string(n) + " points cannot fill " + std::to_string(k) + " folds");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  shuffle_in_place(order, rng);
  std::vector<std::vector<std::size_t>> plan(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    plan[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos), order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return plan;
}

double cv_objective(const std::vector<double>& x01, const std::vector<double>& human, MappingFamily family, double theta,
                    const std::vector<std::vector<std::size_t>>& plan) {
  double z_sum = 0.0;
  for (std::size_t f = 0; f < plan.size(); ++f) {
    std::vector<double> mapped, rated;
    for (std::size_t i : plan[f]) {
      mapped.push_back(apply_mapping(x01[i], family, theta));
      rated.push_back(human[i]);
    }
    const auto r = raw_pearson(mapped, rated);
    if (!r) fail(Errc::DegenerateFold, "fold " + std::to_string(f) + " has constant values");
    z_sum += std::atanh(std::clamp(*r, -kFisherClamp, kFisherClamp));
  }
  return std::tanh(z_sum / static_cast<double>(plan.size()));
}

FitResult fit_mapping_theta(const std::vector<double>& x01, const std::vector<double>& human, MappingFamily family,
                            const FitOptions& opts) {
  if (family == MappingFamily::Simple) fail(Errc::ConfigError, "the simple family has no parameter to fit");
  if (x01.size() != human.size()) fail(Errc::LengthMismatch, "metric values and ratings differ in length");
  for (std::size_t i = 0; i < x01.size(); ++i) {
    if (!(x01[i] >= 0.0 && x01[i] <= 1.0)) fail(Errc::OutOfRange, "prescaled metric values must be in [0, 1]");
    if (!std::isfinite(human[i])) fail(Errc::NonFiniteInput, "human rating is not finite");
  }
  const std::vector<double> grid = theta_grid(opts);
  FitResult result;
  result.family = family;
  result.fold_plan = make_fold_plan(x01.size(), opts.folds, opts.seed);

  std::vector<double> objectives(grid.size());
  double best = -2.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    objectives[g] = cv_objective(x01, human, family, grid[g], result.fold_plan);
    best = std::max(best, objectives[g]);
  }

  // Among near-ties the full-data Spearman decides, then the smaller theta.
  const std::vector<double> human_ranks = average_ranks(human);
  bool chosen = false;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (objectives[g] < best - kTieTolerance) continue;
    std::vector<double> mapped(x01.size());
    for (std::size_t i = 0; i < x01.size(); ++i) mapped[i] = apply_mapping(x01[i], family, grid[g]);
    const double rho = raw_pearson(average_ranks(mapped), human_ranks).value_or(0.0);
    if (!chosen || rho > result.spearman) {
      result.theta = grid[g];
      result.objective = objectives[g];
      result.spearman = rho;
      chosen = true;
    }
  }
  return result;
}

}  // namespace eeval
