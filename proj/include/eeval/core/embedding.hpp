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
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace eeval {

/// T frames of a rows x cols grid of d-dimensional features, stored
/// [t][row][col][dim]. rows = cols = 1 holds one global vector per frame.
class EmbeddingSequence {
 public:
  EmbeddingSequence() = default;
  EmbeddingSequence(std::size_t frames, std::size_t rows, std::size_t cols, std::size_t dim, std::vector<float> data);

  std::size_t frames() const { return frames_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }
  bool is_global() const { return rows_ == 1 && cols_ == 1; }

  std::span<const float> cell(std::size_t t, std::size_t row, std::size_t col) const {
    return {data_.data() + ((t * rows_ + row) * cols_ + col) * dim_, dim_};
  }
  /// Global vector of frame t (first cell of the grid).
  std::span<const float> vector(std::size_t t) const { return cell(t, 0, 0); }
  std::span<const float> data() const { return data_; }

 private:
  std::size_t frames_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;

/// Binary layout: "WWEB", u32 version, u32 T, rows, cols, d, then
/// T*rows*cols*d little-endian float32.
EmbeddingSequence parse_embedding(std::span<const std::byte> bytes);
EmbeddingSequence read_embedding_file(const std::filesystem::path& path);
std::vector<std::byte> serialize_embedding(const EmbeddingSequence& seq);
void write_embedding_file(const std::filesystem::path& path, const EmbeddingSequence& seq);

}  // namespace eeval
