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
#include <iosfwd>
#include <string>
#include <vector>

namespace eeval::cli {

/// Settings shared by all commands. Every field is also a config-file key.
struct Options {
  std::string manifest;
  std::string mappings;
  std::string weights;
  std::string out = "eeval_out";
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string metrics;
  std::string human;
  std::string afc_log;
  double grid_max = 5.0;
  double grid_step = 0.01;
  int folds = 5;
  std::string format = "csv";
  std::string scorecards;
  std::string values;
  std::string family = "keep";
  bool strict_args = false;
};

enum ExitCode : int { kOk = 0, kMetricErrors = 1, kConfigError = 2 };

int cmd_evaluate(const Options& opts, std::ostream& log);
int cmd_calibrate(const Options& opts, std::ostream& log);
int cmd_report(const Options& opts, std::ostream& log);
int cmd_correlate(const Options& opts, std::ostream& log);
int cmd_validate(const Options& opts, std::ostream& log);

/// Standalone SVG scatter of (x, y) with a least-squares line and an r / rho caption.
std::string scatter_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<std::string>& labels, const std::vector<double>& x,
                        const std::vector<double>& y, double r, double rho);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace eeval::cli
