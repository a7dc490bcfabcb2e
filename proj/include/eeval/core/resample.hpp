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
#include <vector>

namespace eeval {

/// Picks `target` indices spread evenly over [0, source-1], nearest index with
/// halves rounded up. Endpoints are always kept.
std::vector<std::size_t> uniform_sample_indices(std::size_t source, std::size_t target);

template <typename T>
std::vector<T> take_indices(const std::vector<T>& items, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(items[i]);
  return out;
}

/// Index maps that bring two sequences to the shorter length.
struct AlignedIndices {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};
AlignedIndices align_to_shorter(std::size_t len_first, std::size_t len_second);

}  // namespace eeval
