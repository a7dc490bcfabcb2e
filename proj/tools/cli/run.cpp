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

#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace eeval::cli {

int run(int argc, const char* const* argv) {
  CLI::App app{"Evaluation engine for generated robot-manipulation videos", "eeval"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "TOML config file; keys are the long flag names", false)->envname("EEVAL_CONFIG");

  Options o;
  app.add_option("--manifest", o.manifest, "Dataset manifest (JSON)");
  app.add_option("--mappings", o.mappings, "Mappings file; empty uses the built-in table");
  app.add_option("--weights", o.weights, "Group weights: quality=1,physical=2 or a JSON file; empty means all 1");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--jobs", o.jobs, "Worker threads for evaluate")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for RANSAC sampling and calibration folds");
  app.add_option("--metrics", o.metrics, "Comma list of metrics to compute; empty means all");
  app.add_option("--human", o.human, "Human ratings CSV (model_or_sample_id,rating,rater_id)");
  app.add_option("--afc-log", o.afc_log, "Forced-choice log CSV (model,sample_id,rater_id,judged_real)");
  app.add_option("--grid-max", o.grid_max, "Largest mapping parameter tried by calibrate");
  app.add_option("--grid-step", o.grid_step, "Mapping parameter grid step");
  app.add_option("--folds", o.folds, "Cross-validation folds for calibrate");
  app.add_option("--format", o.format, "Table format for report and correlate")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--scorecards", o.scorecards, "Directory of scorecards for report");
  app.add_option("--values", o.values, "Metric values CSV (id,metric,value) for calibrate and correlate");
  app.add_option("--family", o.family, "Mapping family for calibrate: keep, gamma, logit, tanh or auto")
      ->check(CLI::IsMember({"keep", "gamma", "logit", "tanh", "auto"}));
  app.add_flag("--strict-args", o.strict_args, "Plan nodes must also match on arguments");

  int code = kOk;
  app.add_subcommand("evaluate", "Score every sample and write per-model scorecards and leaderboard.csv")
      ->callback([&] { code = cmd_evaluate(o, std::cerr); });
  app.add_subcommand("calibrate", "Fit mapping parameters against human ratings and write mappings.json")
      ->callback([&] { code = cmd_calibrate(o, std::cerr); });
  app.add_subcommand("report", "Correlate scorecard overall scores with human ratings; plot; deceive ratios")
      ->callback([&] { code = cmd_report(o, std::cerr); });
  app.add_subcommand("correlate", "Correlate per-metric values with human ratings")
      ->callback([&] { code = cmd_correlate(o, std::cerr); });
  app.add_subcommand("validate", "Check a manifest and every file it references")
      ->callback([&] { code = cmd_validate(o, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  return code;
}

}  // namespace eeval::cli
