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

#include <cmath>
#include <sstream>
#include <string>

#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"
#include "eeval/scoring_calibration.hpp"

namespace eeval {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Rows of a CSV file after checking the header. Blank lines are skipped.
std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::vector<std::string>& header) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    for (auto& f : fields) f = trim(f);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        fail(Errc::SchemaError, path.string() + ": header must be " + expected);
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      fail(Errc::SchemaError, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    }
    rows.push_back(std::move(fields));
  }
  if (!seen_header) fail(Errc::SchemaError, path.string() + ": empty table");
  return rows;
}

double parse_number(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) fail(Errc::SchemaError, where + ": bad number '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
  if (s == "0" || s == "false" || s == "FALSE" || s == "False") return false;
  fail(Errc::SchemaError, where + ": bad boolean '" + s + "'");
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<HumanRating> read_human_ratings(const std::filesystem::path& path) {
  std::vector<HumanRating> out;
  for (auto& row : read_table(path, {"model_or_sample_id", "rating", "rater_id"})) {
    if (row[0].empty()) fail(Errc::SchemaError, path.string() + ": empty id");
    out.push_back({row[0], parse_number(row[1], path.string()), row[2]});
  }
  return out;
}

std::map<std::string, double> mean_ratings(const std::vector<HumanRating>& ratings) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& r : ratings) {
    auto& [sum, n] = acc[r.id];
    sum += r.rating;
    ++n;
  }
  std::map<std::string, double> out;
  for (const auto& [id, sn] : acc) out[id] = sn.first / static_cast<double>(sn.second);
  return out;
}

std::vector<AfcResponse> read_afc_log(const std::filesystem::path& path) {
  std::vector<AfcResponse> out;
  for (auto& row : read_table(path, {"model", "sample_id", "rater_id", "judged_real"})) {
    if (row[0].empty()) fail(Errc::SchemaError, path.string() + ": empty model");
    out.push_back({row[0], row[1], row[2], parse_bool(row[3], path.string())});
  }
  return out;
}

std::map<std::string, double> deceive_ratio(const std::vector<AfcResponse>& responses) {
  if (responses.empty()) fail(Errc::NoResponses, "no forced-choice responses");
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& r : responses) {
    auto& [real, total] = counts[r.model];
    real += r.judged_real ? 1 : 0;
    ++total;
  }
  std::map<std::string, double> out;
  for (const auto& [model, c] : counts) out[model] = static_cast<double>(c.first) / static_cast<double>(c.second);
  return out;
}

}  // namespace eeval
