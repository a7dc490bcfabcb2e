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

#include "eeval/core/manifest.hpp"

#include <algorithm>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <set>
#include <string_view>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"

namespace eeval {
namespace {

using nlohmann::json;

std::string where(const std::string& id, std::string_view field) {
  return "sample '" + id + "', field '" + std::string(field) + "'";
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& id,
                    std::string_view context) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(Errc::MalformedManifest, where(id, std::string(context) + key) + ": unknown key");
    }
  }
}

const json& require(const json& obj, std::string_view key, const std::string& id) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) fail(Errc::MissingField, where(id, key));
  return *it;
}

template <typename T>
T as(const json& value, const std::string& id, std::string_view field) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    fail(Errc::MalformedManifest, where(id, field) + ": wrong type");
  }
}

std::filesystem::path resolve(const json& value, const std::filesystem::path& base, const std::string& id,
                              std::string_view field) {
  std::filesystem::path p = as<std::string>(value, id, field);
  if (p.empty()) fail(Errc::MalformedManifest, where(id, field) + ": empty path");
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::optional<std::filesystem::path> optional_path(const json& obj, std::string_view key,
                                                   const std::filesystem::path& base, const std::string& id,
                                                   std::string_view context = "") {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return resolve(*it, base, id, std::string(context) + std::string(key));
}

const json* optional_object(const json& obj, std::string_view key, const std::string& id) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  if (!it->is_object()) fail(Errc::MalformedManifest, where(id, key) + ": expected an object");
  return &*it;
}

RegionMaskPaths parse_masks(const json& obj, std::string_view key, const std::filesystem::path& base,
                            const std::string& id) {
  RegionMaskPaths out;
  if (const json* m = optional_object(obj, key, id)) {
    const std::string ctx = std::string(key) + ".";
    reject_unknown(*m, {"obj", "arm"}, id, ctx);
    out.obj = optional_path(*m, "obj", base, id, ctx);
    out.arm = optional_path(*m, "arm", base, id, ctx);
  }
  return out;
}

EmbeddingPaths parse_embeddings(const json& obj, std::string_view key, const std::filesystem::path& base,
                                const std::string& id) {
  EmbeddingPaths out;
  if (const json* m = optional_object(obj, key, id)) {
    const std::string ctx = std::string(key) + ".";
    reject_unknown(*m, {"global", "patch", "clip"}, id, ctx);
    out.global = optional_path(*m, "global", base, id, ctx);
    out.patch = optional_path(*m, "patch", base, id, ctx);
    out.clip = optional_path(*m, "clip", base, id, ctx);
  }
  return out;
}

Sample parse_sample(const json& obj, const std::filesystem::path& base, std::size_t index) {
  if (!obj.is_object()) fail(Errc::MalformedManifest, "sample #" + std::to_string(index) + " is not an object");
  const auto id_it = obj.find("id");
  if (id_it == obj.end() || id_it->is_null()) {
    fail(Errc::MissingField, where("#" + std::to_string(index), "id"));
  }
  Sample s;
  s.id = as<std::string>(*id_it, "#" + std::to_string(index), "id");
  if (s.id.empty()) fail(Errc::MalformedManifest, where("#" + std::to_string(index), "id") + ": empty id");
  const std::string& id = s.id;

  reject_unknown(obj,
                 {"id", "model", "instruction", "dimension_tags", "width", "height", "frame_counts", "gen_frames_dir",
                  "gt_frames_dir", "gen_masks", "gt_masks", "gen_embeddings", "gt_embeddings", "gen_tracks",
                  "gt_tracks", "judge_outputs"},
                 id, "");

  s.model = obj.contains("model") ? as<std::string>(obj["model"], id, "model") : std::string("default");
  if (s.model.empty()) fail(Errc::MalformedManifest, where(id, "model") + ": empty model name");
  s.instruction = as<std::string>(require(obj, "instruction", id), id, "instruction");
  if (obj.contains("dimension_tags")) {
    s.dimension_tags = as<std::vector<std::string>>(obj["dimension_tags"], id, "dimension_tags");
    std::set<std::string> unique(s.dimension_tags.begin(), s.dimension_tags.end());
    s.dimension_tags.assign(unique.begin(), unique.end());
  }
  s.width = as<int>(require(obj, "width", id), id, "width");
  s.height = as<int>(require(obj, "height", id), id, "height");
  if (s.width <= 0 || s.height <= 0) fail(Errc::MalformedManifest, where(id, "width/height") + ": must be positive");

  const json& counts = require(obj, "frame_counts", id);
  if (!counts.is_object()) fail(Errc::MalformedManifest, where(id, "frame_counts") + ": expected an object");
  reject_unknown(counts, {"gen", "gt"}, id, "frame_counts.");
  s.frame_counts.gen = as<int>(require(counts, "gen", id), id, "frame_counts.gen");
  if (counts.contains("gt") && !counts["gt"].is_null()) {
    s.frame_counts.gt = as<int>(counts["gt"], id, "frame_counts.gt");
  }
  if (s.frame_counts.gen <= 0 || (s.frame_counts.gt && *s.frame_counts.gt <= 0)) {
    fail(Errc::MalformedManifest, where(id, "frame_counts") + ": must be positive");
  }

  s.gen_frames_dir = optional_path(obj, "gen_frames_dir", base, id);
  s.gt_frames_dir = optional_path(obj, "gt_frames_dir", base, id);
  if (s.gt_frames_dir && !s.frame_counts.gt) fail(Errc::MissingField, where(id, "frame_counts.gt"));
  s.gen_masks = parse_masks(obj, "gen_masks", base, id);
  s.gt_masks = parse_masks(obj, "gt_masks", base, id);
  s.gen_embeddings = parse_embeddings(obj, "gen_embeddings", base, id);
  s.gt_embeddings = parse_embeddings(obj, "gt_embeddings", base, id);
  s.gen_tracks = optional_path(obj, "gen_tracks", base, id);
  s.gt_tracks = optional_path(obj, "gt_tracks", base, id);
  if (const json* judges = optional_object(obj, "judge_outputs", id)) {
    reject_unknown(*judges, {"caption", "sequence_exec", "physical", "planning"}, id, "judge_outputs.");
    for (const auto& [name, value] : judges->items()) {
      if (value.is_null()) continue;
      s.judge_outputs.emplace(name, resolve(value, base, id, "judge_outputs." + name));
    }
  }
  return s;
}

}  // namespace

std::optional<std::filesystem::path> Sample::judge(const std::string& name) const {
  const auto it = judge_outputs.find(name);
  if (it == judge_outputs.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Manifest::models() const {
  std::vector<std::string> out;
  for (const auto& s : samples) {
    if (std::find(out.begin(), out.end(), s.model) == out.end()) out.push_back(s.model);
  }
  return out;
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::MalformedManifest, e.what());
  }
  if (!doc.is_object()) fail(Errc::MalformedManifest, "top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "dataset_name" && key != "version" && key != "samples") {
      fail(Errc::MalformedManifest, "unknown top-level key '" + key + "'");
    }
  }
  Manifest m;
  m.base_dir = base_dir;
  try {
    m.dataset_name = doc.value("dataset_name", std::string());
    m.version = doc.value("version", std::string());
  } catch (const json::exception&) {
    fail(Errc::MalformedManifest, "dataset_name and version must be strings");
  }
  const auto samples = doc.find("samples");
  if (samples == doc.end() || !samples->is_array()) fail(Errc::MalformedManifest, "'samples' must be an array");
  if (samples->empty()) fail(Errc::MalformedManifest, "'samples' is empty");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < samples->size(); ++i) {
    Sample s = parse_sample((*samples)[i], base_dir, i);
    if (!seen.insert(s.id).second) fail(Errc::DuplicateSampleId, "sample '" + s.id + "' appears more than once");
    m.samples.push_back(std::move(s));
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    fail(Errc::MalformedManifest, e.what());
  }
  return parse_manifest(text, path.parent_path());
}

std::vector<std::filesystem::path> referenced_paths(const Sample& s) {
  std::vector<std::filesystem::path> out;
  auto add = [&](const std::optional<std::filesystem::path>& p) {
    if (p) out.push_back(*p);
  };
  add(s.gen_frames_dir);
  add(s.gt_frames_dir);
  for (const RegionMaskPaths* m : {&s.gen_masks, &s.gt_masks}) {
    add(m->obj);
    add(m->arm);
  }
  for (const EmbeddingPaths* e : {&s.gen_embeddings, &s.gt_embeddings}) {
    add(e->global);
    add(e->patch);
    add(e->clip);
  }
  add(s.gen_tracks);
  add(s.gt_tracks);
  for (const auto& [_, p] : s.judge_outputs) out.push_back(p);
  return out;
}

std::string display_path(const std::filesystem::path& path, const std::filesystem::path& base_dir) {
  if (base_dir.empty()) return path.generic_string();
  const auto rel = path.lexically_relative(base_dir.lexically_normal());
  if (rel.empty() || *rel.begin() == "..") return path.generic_string();
  return rel.generic_string();
}

}  // namespace eeval
