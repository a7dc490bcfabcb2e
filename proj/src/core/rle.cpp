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

#include "eeval/core/rle.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"

namespace eeval {

BitMask decode_rle(std::span<const std::uint64_t> counts, int height, int width) {
  if (height <= 0 || width <= 0) fail(Errc::ShapeMismatch, "mask dimensions must be positive");
  const std::uint64_t total = static_cast<std::uint64_t>(height) * static_cast<std::uint64_t>(width);
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) {
    if (c > total || sum > total - c) fail(Errc::LengthMismatch, "run lengths exceed " + std::to_string(total) + " pixels");
    sum += c;
  }
  if (sum != total) {
    fail(Errc::LengthMismatch, "run lengths sum to " + std::to_string(sum) + ", expected " + std::to_string(total));
  }
  BitMask mask(height, width);
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::uint64_t c : counts) {
    std::fill_n(mask.bits.begin() + static_cast<std::ptrdiff_t>(pos), c, value);
    pos += c;
    value ^= 1;
  }
  return mask;
}

RleCounts encode_rle(const BitMask& mask) {
  RleCounts counts;
  std::uint8_t current = 0;
  std::uint64_t run = 0;
  for (std::uint8_t b : mask.bits) {
    const std::uint8_t v = b ? 1 : 0;
    if (v != current) {
      counts.push_back(run);
      run = 0;
      current = v;
    }
    ++run;
  }
  counts.push_back(run);
  return counts;
}

BitMask RleMaskSequence::frame(std::size_t t) const { return decode_rle(frames.at(t), height, width); }

RleMaskSequence read_rle_file(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  RleMaskSequence seq;
  try {
    for (const auto& [key, _] : doc.items()) {
      if (key != "height" && key != "width" && key != "frames") {
        fail(Errc::SchemaError, path.string() + ": unknown key '" + key + "'");
      }
    }
    seq.height = doc.at("height").get<int>();
    seq.width = doc.at("width").get<int>();
    seq.frames = doc.at("frames").get<std::vector<RleCounts>>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::SchemaError, path.string() + ": " + e.what());
  }
  if (seq.height <= 0 || seq.width <= 0) fail(Errc::SchemaError, path.string() + ": height and width must be positive");
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    try {
      (void)decode_rle(seq.frames[t], seq.height, seq.width);
    } catch (const Error& e) {
      fail(e.code(), path.string() + " frame " + std::to_string(t) + ": " + e.message());
    }
  }
  return seq;
}

void write_rle_file(const std::filesystem::path& path, const RleMaskSequence& seq) {
  nlohmann::json doc;
  doc["height"] = seq.height;
  doc["width"] = seq.width;
  doc["frames"] = seq.frames;
  write_file_atomic(path, doc.dump() + "\n");
}

}  // namespace eeval
