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

#include "eeval/core/resample.hpp"

#include <algorithm>
#include <string>

#include "eeval/core/error.hpp"

namespace eeval {

std::vector<std::size_t> uniform_sample_indices(std::size_t source, std::size_t target) {
  if (target < 1 || target > source) {
    fail(Errc::InvalidLength,
         "cannot sample " + std::to_string(target) + " of " + std::to_string(source) + " indices");
  }
  if (target == 1) return {0};
  std::vector<std::size_t> idx(target);
  const std::size_t span = source - 1;
  const std::size_t steps = target - 1;
  for (std::size_t t = 0; t < target; ++t) {
    // round(t * span / steps), half up, in exact integer arithmetic.
    idx[t] = (2 * t * span + steps) / (2 * steps);
  }
  return idx;
}

AlignedIndices align_to_shorter(std::size_t len_first, std::size_t len_second) {
  const std::size_t target = std::min(len_first, len_second);
  return {uniform_sample_indices(len_first, target), uniform_sample_indices(len_second, target)};
}

}  // namespace eeval
