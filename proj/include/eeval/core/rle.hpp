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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace eeval {

/// Row-major binary mask.
struct BitMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;

  BitMask() = default;
  BitMask(int h, int w, std::uint8_t fill = 0) : height(h), width(w), bits(static_cast<std::size_t>(h) * w, fill) {}

  bool at(int row, int col) const { return bits[static_cast<std::size_t>(row) * width + col] != 0; }
  void set(int row, int col, bool v) { bits[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0; }
  friend bool operator==(const BitMask&, const BitMask&) = default;
};

using RleCounts = std::vector<std::uint64_t>;

/// Per-frame masks as alternating zero/one run lengths, row-major, starting
/// with the (possibly empty) zero run.
struct RleMaskSequence {
  int height = 0;
  int width = 0;
  std::vector<RleCounts> frames;

  std::size_t size() const { return frames.size(); }
  BitMask frame(std::size_t t) const;
};

BitMask decode_rle(std::span<const std::uint64_t> counts, int height, int width);
RleCounts encode_rle(const BitMask& mask);

/// Counts for a mask with no foreground.
inline RleCounts empty_rle(int height, int width) {
  return {static_cast<std::uint64_t>(height) * static_cast<std::uint64_t>(width)};
}

/// Reads {"height","width","frames"} and checks every frame's run total.
RleMaskSequence read_rle_file(const std::filesystem::path& path);
void write_rle_file(const std::filesystem::path& path, const RleMaskSequence& seq);

}  // namespace eeval
