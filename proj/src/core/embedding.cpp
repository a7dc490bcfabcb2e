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

#include "eeval/core/embedding.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"

namespace eeval {
namespace {

constexpr std::array<char, 4> kMagic = {'W', 'W', 'E', 'B'};
constexpr std::size_t kHeaderBytes = 4 + 5 * 4;

std::uint32_t load_u32_le(const std::byte* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32_le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
}

}  // namespace

EmbeddingSequence::EmbeddingSequence(std::size_t frames, std::size_t rows, std::size_t cols, std::size_t dim,
                                     std::vector<float> data)
    : frames_(frames), rows_(rows), cols_(cols), dim_(dim), data_(std::move(data)) {
  if (frames_ < 1 || rows_ < 1 || cols_ < 1 || dim_ < 1) fail(Errc::ShapeMismatch, "embedding dimensions must be positive");
  if (data_.size() != frames_ * rows_ * cols_ * dim_) fail(Errc::ShapeMismatch, "embedding payload does not match shape");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) fail(Errc::NonFiniteValue, "value at index " + std::to_string(i));
  }
}

EmbeddingSequence parse_embedding(std::span<const std::byte> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic.data(), 4) != 0) fail(Errc::BadMagic, "expected 'WWEB'");
  if (bytes.size() < kHeaderBytes) fail(Errc::TruncatedFile, "header is incomplete");
  const std::uint32_t version = load_u32_le(bytes.data() + 4);
  if (version != kEmbeddingFormatVersion) fail(Errc::BadMagic, "unsupported version " + std::to_string(version));
  const std::uint64_t t = load_u32_le(bytes.data() + 8);
  const std::uint64_t rows = load_u32_le(bytes.data() + 12);
  const std::uint64_t cols = load_u32_le(bytes.data() + 16);
  const std::uint64_t dim = load_u32_le(bytes.data() + 20);
  if (t < 1 || rows < 1 || cols < 1 || dim < 1) fail(Errc::ShapeMismatch, "header declares an empty shape");
  const std::uint64_t count = t * rows * cols * dim;
  const std::uint64_t payload = bytes.size() - kHeaderBytes;
  if (payload < count * 4) {
    fail(Errc::TruncatedFile,
         "payload has " + std::to_string(payload) + " bytes, header requires " + std::to_string(count * 4));
  }
  if (payload > count * 4) fail(Errc::ShapeMismatch, "trailing bytes after payload");
  std::vector<float> data(count);
  const std::byte* p = bytes.data() + kHeaderBytes;
  for (std::uint64_t i = 0; i < count; ++i, p += 4) {
    const std::uint32_t raw = load_u32_le(p);
    data[i] = std::bit_cast<float>(raw);
    if (!std::isfinite(data[i])) fail(Errc::NonFiniteValue, "value at index " + std::to_string(i));
  }
  return EmbeddingSequence(t, rows, cols, dim, std::move(data));
}

EmbeddingSequence read_embedding_file(const std::filesystem::path& path) {
  const auto bytes = read_binary_file(path);
  try {
    return parse_embedding(bytes);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.message());
  }
}

std::vector<std::byte> serialize_embedding(const EmbeddingSequence& seq) {
  std::vector<std::byte> out;
  out.reserve(kHeaderBytes + seq.data().size() * 4);
  for (char c : kMagic) out.push_back(static_cast<std::byte>(c));
  store_u32_le(out, kEmbeddingFormatVersion);
  store_u32_le(out, static_cast<std::uint32_t>(seq.frames()));
  store_u32_le(out, static_cast<std::uint32_t>(seq.rows()));
  store_u32_le(out, static_cast<std::uint32_t>(seq.cols()));
  store_u32_le(out, static_cast<std::uint32_t>(seq.dim()));
  for (float v : seq.data()) store_u32_le(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

void write_embedding_file(const std::filesystem::path& path, const EmbeddingSequence& seq) {
  const auto bytes = serialize_embedding(seq);
  write_file_atomic(path, std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace eeval
