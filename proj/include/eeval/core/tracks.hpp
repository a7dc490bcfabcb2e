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

#include <filesystem>
#include <vector>

#include "eeval/core/geometry.hpp"

namespace eeval {

/// Point tracks: one list of points per frame, index-aligned across frames.
struct TrackSet {
  int width = 0;
  int height = 0;
  std::vector<std::vector<Point2>> frames;
};

TrackSet read_track_file(const std::filesystem::path& path);
void write_track_file(const std::filesystem::path& path, const TrackSet& tracks);

}  // namespace eeval
