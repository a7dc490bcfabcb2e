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

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <memory>
#include <regex>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"
#include "eeval/frame_metrics.hpp"

namespace eeval {
namespace {

constexpr std::array<char, 4> kFrameMagic = {'W', 'W', 'F', 'R'};
constexpr std::uint32_t kFrameFormatVersion = 1;

std::uint32_t load_u32_le(const std::byte* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

struct PngImage {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

PngImage read_png(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(Errc::IoError, "cannot open " + path.string());
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::IoError, "libpng initialisation failed");
  }
  PngImage img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::IoError, "cannot decode " + path.string());
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  const png_byte color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.channels = png_get_channels(png, info);
  if (img.channels != 1 && img.channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::ShapeMismatch, path.string() + ": unsupported channel count");
  }
  img.pixels.resize(static_cast<std::size_t>(img.height) * img.width * img.channels);
  rows.resize(img.height);
  for (int r = 0; r < img.height; ++r) rows[r] = img.pixels.data() + static_cast<std::size_t>(r) * img.width * img.channels;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

FrameSequence read_png_directory(const std::filesystem::path& dir) {
  static const std::regex kName(R"(frame_(\d{6})\.png)");
  std::vector<std::pair<long, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, kName)) files.emplace_back(std::stol(m[1].str()), entry.path());
  }
  if (files.empty()) fail(Errc::IoError, dir.string() + ": no frame_%06d.png files");
  std::sort(files.begin(), files.end());
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].first != files[i - 1].first + 1) fail(Errc::IoError, dir.string() + ": frame numbering has gaps");
  }
  FrameSequence seq;
  for (const auto& [_, path] : files) {
    PngImage img = read_png(path);
    if (seq.frames == 0) {
      seq.height = img.height;
      seq.width = img.width;
      seq.channels = img.channels;
    } else if (img.height != seq.height || img.width != seq.width || img.channels != seq.channels) {
      fail(Errc::ShapeMismatch, path.string() + ": frame size differs from the first frame");
    }
    seq.pixels.insert(seq.pixels.end(), img.pixels.begin(), img.pixels.end());
    ++seq.frames;
  }
  return seq;
}

}  // namespace

FrameSequence read_raw_frames(const std::filesystem::path& path) {
  const auto bytes = read_binary_file(path);
  constexpr std::size_t kHeader = 4 + 5 * 4;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kFrameMagic.data(), 4) != 0) {
    fail(Errc::BadMagic, path.string() + ": expected 'WWFR'");
  }
  if (bytes.size() < kHeader) fail(Errc::TruncatedFile, path.string() + ": header is incomplete");
  if (load_u32_le(bytes.data() + 4) != kFrameFormatVersion) fail(Errc::BadMagic, path.string() + ": unsupported version");
  FrameSequence seq;
  seq.frames = load_u32_le(bytes.data() + 8);
  seq.height = static_cast<int>(load_u32_le(bytes.data() + 12));
  seq.width = static_cast<int>(load_u32_le(bytes.data() + 16));
  seq.channels = static_cast<int>(load_u32_le(bytes.data() + 20));
  if (seq.frames < 1 || seq.height < 1 || seq.width < 1 || (seq.channels != 1 && seq.channels != 3)) {
    fail(Errc::ShapeMismatch, path.string() + ": invalid frame header");
  }
  const std::size_t expected = seq.frames * seq.frame_size();
  if (bytes.size() - kHeader < expected) fail(Errc::TruncatedFile, path.string() + ": pixel payload is short");
  if (bytes.size() - kHeader > expected) fail(Errc::ShapeMismatch, path.string() + ": trailing bytes after payload");
  seq.pixels.resize(expected);
  std::memcpy(seq.pixels.data(), bytes.data() + kHeader, expected);
  return seq;
}

void write_raw_frames(const std::filesystem::path& path, const FrameSequence& frames) {
  std::string out(kFrameMagic.begin(), kFrameMagic.end());
  store_u32_le(out, kFrameFormatVersion);
  store_u32_le(out, static_cast<std::uint32_t>(frames.frames));
  store_u32_le(out, static_cast<std::uint32_t>(frames.height));
  store_u32_le(out, static_cast<std::uint32_t>(frames.width));
  store_u32_le(out, static_cast<std::uint32_t>(frames.channels));
  out.append(reinterpret_cast<const char*>(frames.pixels.data()), frames.pixels.size());
  write_file_atomic(path, out);
}

void write_png_frames(const std::filesystem::path& dir, const FrameSequence& frames) {
  if (frames.channels != 1 && frames.channels != 3) fail(Errc::ShapeMismatch, "PNG frames need 1 or 3 channels");
  std::filesystem::create_directories(dir);
  for (std::size_t t = 0; t < frames.frames; ++t) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(frames.width);
    image.height = static_cast<png_uint_32>(frames.height);
    image.format = frames.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06zu.png", t);
    const std::string path = (dir / name).string();
    if (!png_image_write_to_file(&image, path.c_str(), 0, frames.frame(t), 0, nullptr)) {
      fail(Errc::IoError, "cannot write " + path + ": " + image.message);
    }
  }
}

FrameSequence load_frames(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return read_png_directory(path);
  return read_raw_frames(path);
}

}  // namespace eeval
