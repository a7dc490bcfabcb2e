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

#include "eeval/core/tracks.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"

namespace eeval {

TrackSet read_track_file(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  TrackSet tracks;
  try {
    for (const auto& [key, _] : doc.items()) {
      if (key != "height" && key != "width" && key != "frames") {
        fail(Errc::SchemaError, path.string() + ": unknown key '" + key + "'");
      }
    }
    tracks.width = doc.at("width").get<int>();
    tracks.height = doc.at("height").get<int>();
    for (const auto& frame : doc.at("frames")) {
      std::vector<Point2> pts;
      for (const auto& p : frame) {
        if (!p.is_array() || p.size() != 2) fail(Errc::SchemaError, path.string() + ": points must be [x, y]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
        if (!std::isfinite(pts.back().x) || !std::isfinite(pts.back().y)) {
          fail(Errc::NonFiniteValue, path.string() + ": non-finite track coordinate");
        }
      }
      tracks.frames.push_back(std::move(pts));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::SchemaError, path.string() + ": " + e.what());
  }
  if (tracks.width <= 0 || tracks.height <= 0) fail(Errc::SchemaError, path.string() + ": width and height must be positive");
  if (tracks.frames.empty()) fail(Errc::SchemaError, path.string() + ": no frames");
  for (const auto& f : tracks.frames) {
    if (f.size() != tracks.frames.front().size()) {
      fail(Errc::LengthMismatch, path.string() + ": every frame must carry the same number of tracked points");
    }
  }
  return tracks;
}

void write_track_file(const std::filesystem::path& path, const TrackSet& tracks) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : tracks.frames) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : f) pts.push_back({p.x, p.y});
    frames.push_back(std::move(pts));
  }
  nlohmann::json doc;
  doc["width"] = tracks.width;
  doc["height"] = tracks.height;
  doc["frames"] = std::move(frames);
  write_file_atomic(path, doc.dump() + "\n");
}

}  // namespace eeval
