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

// Runs every primary acceptance criterion and prints one PASS/FAIL line each.
// Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "eeval/camera_motion.hpp"
#include "eeval/core/error.hpp"
#include "eeval/core/io.hpp"
#include "eeval/distribution_metrics.hpp"
#include "eeval/judge_scores.hpp"
#include "eeval/region_consistency.hpp"
#include "eeval/scoring_calibration.hpp"
#include "eeval/trajectory_metrics.hpp"
#include "support/fvd_oracle.hpp"
#include "support/mapping_oracle.hpp"
#include "support/test_rng.hpp"
#include "support/trajectory_oracle.hpp"

namespace {

namespace fs = std::filesystem;
using namespace eeval;
using eeval::testing::TestRng;

const fs::path kFixtures = EEVAL_FIXTURE_DIR;

/// Collects failed checks inside one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << (total_ - failed_) << "/" << total_ << " checks";
    for (const auto& f : failures_) s << "; " << f;
    if (failed_ > failures_.size()) s << "; ...";
    return s.str();
  }
  std::size_t total() const { return total_; }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome mapping_table() {
  Checks c;
  const MappingTable table = default_mappings();
  c.expect(table.specs().size() == 21, "table has " + std::to_string(table.specs().size()) + " rows");
  double worst = 0.0;
  for (const auto& row : eeval::testing::kReferenceTable) {
    const MappingSpec* s = table.find(row.metric);
    c.expect(s != nullptr, std::string(row.metric) + " missing");
    if (!s) continue;
    c.expect(static_cast<int>(s->family) == static_cast<int>(row.family), std::string(row.metric) + " family");
    if (row.family != eeval::testing::RefFamily::Simple) {
      c.expect(s->theta == row.theta, std::string(row.metric) + " parameter " + fmt(s->theta));
    }
    for (double x : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const long double ref = eeval::testing::reference_mapping(x, row.family, row.theta);
      const double err = std::abs(static_cast<long double>(apply_mapping(x, *s)) - ref);
      worst = std::max(worst, err);
      c.expect(err <= 1e-9, std::string(row.metric) + " at " + fmt(x) + " off by " + fmt(err));
    }
  }
  return {c.ok(), c.summary() + ", max error " + fmt(worst)};
}

Outcome anchors() {
  Checks c;
  const MappingTable table = default_mappings();
  const MappingSpec& psnr = table.at("psnr");
  const MappingSpec& fvd_spec = table.at("fvd");
  const std::vector<std::pair<double, double>> psnr_cases = {{0, 0}, {12.5, 0.25}, {25, 0.5}, {37.5, 0.75}, {60, 1}};
  const std::vector<std::pair<double, double>> fvd_cases = {{0, 1}, {500, 0.75}, {1000, 0.5}, {2000, 0}, {2500, 0}};
  for (auto [x, want] : psnr_cases) c.expect(prescale(x, psnr) == want, "PSNR " + fmt(x) + " -> " + fmt(prescale(x, psnr)));
  for (auto [x, want] : fvd_cases) {
    c.expect(prescale(x, fvd_spec) == want, "FVD " + fmt(x) + " -> " + fmt(prescale(x, fvd_spec)));
  }
  return {c.ok(), c.summary()};
}

Trajectory2D random_traj(TestRng& rng, std::size_t len) {
  Trajectory2D t;
  for (std::size_t i = 0; i < len; ++i) t.points.push_back({rng.uniform(), rng.uniform()});
  return t;
}

Outcome dtw_frechet() {
  Checks c;
  TestRng rng(2025);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_traj(rng, static_cast<std::size_t>(rng.integer(1, 6)));
    const auto b = random_traj(rng, static_cast<std::size_t>(rng.integer(1, 6)));
    c.expect(dtw_distance(a, b) == eeval::testing::brute_force_dtw(a, b), "DTW pair " + std::to_string(i));
    c.expect(discrete_frechet(a, b) == eeval::testing::brute_force_frechet(a, b), "Frechet pair " + std::to_string(i));
  }
  return {c.ok(), c.summary()};
}

Outcome fvd_check() {
  Checks c;
  TestRng rng(404);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd a(1), b(1);
    Eigen::MatrixXd va(1, 1), vb(1, 1);
    a << rng.uniform(-3, 3);
    b << rng.uniform(-3, 3);
    va << rng.uniform(0.01, 5);
    vb << rng.uniform(0.01, 5);
    const double closed = std::pow(a(0) - b(0), 2) + va(0, 0) + vb(0, 0) - 2 * std::sqrt(va(0, 0) * vb(0, 0));
    const double err = std::abs(fvd({a, va, 10}, {b, vb, 10}) - closed);
    worst = std::max(worst, err);
    c.expect(err <= 1e-6, "1-D case " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 5;
    Eigen::VectorXd a(d), b(d);
    for (int k = 0; k < d; ++k) {
      a(k) = rng.normal();
      b(k) = rng.normal();
    }
    const GaussianStats r{a, eeval::testing::random_psd(d, rng), 10};
    const GaussianStats g{b, eeval::testing::random_psd(d, rng), 10};
    const double err = std::abs(fvd(r, g) - eeval::testing::fvd_oracle(r, g));
    worst = std::max(worst, err);
    c.expect(err <= 1e-6, "d=" + std::to_string(d) + " case " + std::to_string(i) + " off by " + fmt(err));
    c.expect(fvd(r, r) <= 1e-6, "FVD(A,A) = " + fmt(fvd(r, r)));
  }
  return {c.ok(), c.summary() + ", max error " + fmt(worst)};
}

Outcome camera() {
  Checks c;
  TestRng rng(77);
  const SimilarityTransform truth{1.2, 30.0 * std::numbers::pi / 180.0, {5, -3}};
  std::vector<Point2> src, dst, noisy;
  for (int i = 0; i < 20; ++i) {
    src.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
    dst.push_back(truth.apply(src.back()));
    noisy.push_back(i % 10 < 3 ? Point2{rng.uniform(-50, 150), rng.uniform(-50, 150)} : dst.back());
  }
  const RansacResult exact = fit_similarity_ransac(src, dst, RansacConfig{});
  const double param_err = std::max({std::abs(exact.transform.scale - truth.scale),
                                     std::abs(exact.transform.angle - truth.angle),
                                     std::abs(exact.transform.t.x - truth.t.x), std::abs(exact.transform.t.y - truth.t.y)});
  c.expect(param_err <= 1e-6, "noise-free parameters off by " + fmt(param_err));
  c.expect(exact.inlier_count == 20, "noise-free inliers " + std::to_string(exact.inlier_count));

  const RansacResult robust = fit_similarity_ransac(src, noisy, RansacConfig{});
  double reproj = 0.0;
  for (const auto& p : src) reproj = std::max(reproj, distance(robust.transform.apply(p), truth.apply(p)));
  c.expect(reproj <= 0.5, "outlier case reprojection " + fmt(reproj) + " px");

  for (int i = 0; i < 100; ++i) {
    const auto len = static_cast<std::size_t>(rng.integer(2, 12));
    CameraTrajectory x, y;
    x.width = y.width = 1;
    x.height = y.height = 1;
    x.offsets = y.offsets = {{0, 0}};
    for (std::size_t t = 1; t < len; ++t) {
      x.offsets.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      y.offsets.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    c.expect(ate(x, x) == 0.0, "ATE(x,x) trajectory " + std::to_string(i));
    CameraTrajectory moved = x;
    const Point2 v{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (auto& p : moved.offsets) p = p + v;
    c.expect(std::abs(rpe(moved, y) - rpe(x, y)) <= 1e-12, "RPE translation trajectory " + std::to_string(i));
  }
  return {c.ok(), c.summary() + ", outlier reprojection " + fmt(reproj) + " px"};
}

RleMaskSequence region(std::size_t frames, std::array<int, 4> pixels) {
  RleMaskSequence s;
  s.height = 2;
  s.width = 2;
  BitMask m(2, 2);
  for (int i = 0; i < 4; ++i) m.set(i / 2, i % 2, pixels[i] != 0);
  for (std::size_t t = 0; t < frames; ++t) s.frames.push_back(encode_rle(m));
  return s;
}

template <typename F>
EmbeddingSequence grid(std::size_t frames, F feature) {
  std::vector<float> data;
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t p = 0; p < 4; ++p) {
      const auto v = feature(t, p);
      data.insert(data.end(), v.begin(), v.end());
    }
  }
  return EmbeddingSequence(frames, 2, 2, 3, data);
}

std::array<float, 3> basis(std::size_t i) {
  std::array<float, 3> v{0, 0, 0};
  v[i] = 1;
  return v;
}

Outcome mrc_cases() {
  Checks c;
  // Constant features, every region present: object on patch 0, arm on
  // patch 1, background the remaining two.
  const auto constant = grid(4, [](std::size_t, std::size_t p) { return basis(p % 3); });
  RegionMasks masks;
  masks.obj = region(4, {1, 0, 0, 0});
  masks.arm = region(4, {0, 1, 0, 0});
  MrcReport r = mrc(constant, masks);
  c.expect(r.mrc_obj == 1.0 && r.mrc_arm == 1.0, "constant features: obj " + fmt(r.mrc_obj) + " arm " + fmt(r.mrc_arm));
  c.expect(std::abs(r.mrc_bg - 1.0) <= 1e-15, "constant features: bg " + fmt(r.mrc_bg));

  masks.obj = region(4, {0, 0, 0, 0});
  r = mrc(constant, masks);
  c.expect(r.mrc_obj == 0.0, "empty object mask: " + fmt(r.mrc_obj));

  const auto ortho = grid(3, [](std::size_t t, std::size_t p) { return p == 0 ? basis(t == 1 ? 1 : 0) : basis(2); });
  RegionMasks obj_only;
  obj_only.obj = region(3, {1, 0, 0, 0});
  r = mrc(ortho, obj_only);
  c.expect(r.mrc_obj == 0.25, "orthogonal middle frame: " + fmt(r.mrc_obj));
  return {c.ok(), c.summary()};
}

Outcome score_arithmetic() {
  Checks c;
  CaptionJudgment cap;
  auto set_caption = [&](std::array<double, 5> v) {
    for (std::size_t i = 0; i < 5; ++i) cap.components[std::string(CaptionJudgment::kComponents[i])] = v[i];
  };
  set_caption({1, 1, 1, 1, 1});
  c.expect(caption_score(cap) == 100.0, "caption all ones");
  set_caption({1, 1, 0.5, 0, 1});
  c.expect(caption_score(cap) == 70.0, "caption mixed = " + fmt(caption_score(cap)));

  auto se = sequence_exec_scores({1.0, {5, 5}});
  c.expect(se.sequence == 100.0 && se.execution == 100.0, "sequence/execution top");
  se = sequence_exec_scores({0.5, {3}});
  c.expect(se.sequence == 50.0 && se.execution == 50.0, "sequence/execution midpoint");
  c.expect(sequence_exec_scores({0.0, {1, 5}}).execution == 50.0, "execution [1,5]");

  PhysicalJudgment phys;
  auto set_phys = [&](std::array<std::optional<int>, 6> v) {
    for (std::size_t i = 0; i < 6; ++i) phys.dims[std::string(PhysicalJudgment::kDimensions[i])] = v[i];
  };
  set_phys({5, 5, 5, 5, 5, 5});
  c.expect(physical_score(phys) == 100.0, "physical all fives");
  set_phys({3, 3, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  c.expect(physical_score(phys) == 50.0, "physical two threes");
  set_phys({});
  bool all_null = false;
  try {
    physical_score(phys);
  } catch (const eeval::Error& e) {
    all_null = e.code() == Errc::AllNull;
  }
  c.expect(all_null, "physical all null raises AllNull");

  const JudgeScoreMap gt{{"a", 5}, {"b", 3}};
  c.expect(grpo_alignment_reward(gt, gt) == 1.0, "reward identical");
  c.expect(grpo_alignment_reward(JudgeScoreMap{{"a", 1}, {"b", 1}}, JudgeScoreMap{{"a", 5}, {"b", 5}}) == 0.0,
           "reward opposite");
  c.expect(grpo_alignment_reward(JudgeScoreMap{{"a", 4}, {"b", 3}}, gt) == 0.875, "reward 0.875");

  auto plan = [](std::vector<std::string> skills) {
    PlanDag d;
    for (auto& s : skills) d.nodes.push_back({s, "cup", {}});
    return d;
  };
  const PlanDag ref = plan({"reach", "grasp", "lift", "place"});
  c.expect(dag_node_correctness(ref, ref) == 1.0, "DAG identical");
  c.expect(dag_node_correctness(PlanDag{}, ref) == 0.0, "DAG empty prediction");
  c.expect(dag_node_correctness(plan({"grasp", "push", "place", "reach"}), ref) == 0.5, "DAG half");
  c.expect(long_horizon_score(1, 1) == 100.0, "long horizon (1,1)");
  c.expect(long_horizon_score(0, 0) == 0.0, "long horizon (0,0)");
  c.expect(long_horizon_score(0.5, 0.2) == 35.0, "long horizon (0.5,0.2) = " + fmt(long_horizon_score(0.5, 0.2)));

  // Monotonicity: 1000 probes per function.
  TestRng rng(1000);
  const std::array<double, 3> levels{0, 0.5, 1};
  const std::array<std::string, 3> skills{"reach", "grasp", "place"};
  for (int i = 0; i < 1000; ++i) {
    std::array<double, 5> v;
    for (auto& x : v) x = levels[rng.integer(0, 2)];
    set_caption(v);
    const double before = caption_score(cap);
    v[rng.integer(0, 4)] = 1.0;
    set_caption(v);
    c.expect(before <= caption_score(cap), "caption monotone probe " + std::to_string(i));

    std::vector<int> exec(static_cast<std::size_t>(rng.integer(1, 5)));
    for (auto& q : exec) q = rng.integer(1, 5);
    const double sm = rng.uniform();
    const auto base = sequence_exec_scores({sm, exec});
    auto& bump = exec[static_cast<std::size_t>(rng.integer(0, static_cast<int>(exec.size()) - 1))];
    bump = std::min(5, bump + 1);
    const auto up = sequence_exec_scores({std::min(1.0, sm + rng.uniform(0, 0.5)), exec});
    c.expect(base.sequence <= up.sequence, "sequence monotone probe " + std::to_string(i));
    c.expect(base.execution <= up.execution, "execution monotone probe " + std::to_string(i));

    std::array<std::optional<int>, 6> p;
    for (auto& x : p) x = rng.coin() ? std::optional<int>(rng.integer(1, 5)) : std::nullopt;
    p[0] = rng.integer(1, 5);
    set_phys(p);
    const double pb = physical_score(phys);
    p[0] = std::min(5, *p[0] + 1);
    set_phys(p);
    c.expect(pb <= physical_score(phys), "physical monotone probe " + std::to_string(i));

    const double nc = rng.uniform(), tc = rng.uniform();
    const double lh = long_horizon_score(nc, tc);
    c.expect(lh >= 0 && lh <= 100 && lh <= long_horizon_score(std::min(1.0, nc + rng.uniform(0, 0.3)), tc) &&
                 lh <= long_horizon_score(nc, std::min(1.0, tc + rng.uniform(0, 0.3))),
             "long horizon monotone probe " + std::to_string(i));

    const double g = rng.uniform(1, 5), o = rng.uniform(1, 5);
    const double closer = o + (g - o) * rng.uniform();
    c.expect(grpo_alignment_reward(JudgeScoreMap{{"k", o}}, JudgeScoreMap{{"k", g}}) <=
                 grpo_alignment_reward(JudgeScoreMap{{"k", closer}}, JudgeScoreMap{{"k", g}}) + 1e-15,
             "reward monotone probe " + std::to_string(i));

    PlanDag pred, truth_plan;
    for (int k = rng.integer(0, 5); k > 0; --k) pred.nodes.push_back({skills[rng.integer(0, 2)], "cup", {}});
    for (int k = rng.integer(1, 5); k > 0; --k) truth_plan.nodes.push_back({skills[rng.integer(0, 2)], "cup", {}});
    const double dag_before = dag_node_correctness(pred, truth_plan);
    PlanDag grown = pred;
    grown.nodes.insert(grown.nodes.begin() + rng.integer(0, static_cast<int>(pred.nodes.size())),
                       truth_plan.nodes[static_cast<std::size_t>(rng.integer(0, static_cast<int>(truth_plan.nodes.size()) - 1))]);
    c.expect(dag_before <= dag_node_correctness(grown, truth_plan), "DAG monotone probe " + std::to_string(i));
  }
  return {c.ok(), c.summary()};
}

Outcome calibration() {
  Checks c;
  std::ifstream in(kFixtures / "calibration" / "values.csv");
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<std::string, double>> values;
  while (std::getline(in, line)) {
    const auto row = split_csv_line(line);
    if (row.size() == 3 && row[1] == "dino") values.emplace_back(row[0], std::stod(row[2]));
  }
  const auto ratings = mean_ratings(read_human_ratings(kFixtures / "calibration" / "ratings.csv"));
  const MappingSpec spec = default_mappings().at("dino");
  std::vector<double> x01, human;
  for (const auto& [id, v] : values) {
    x01.push_back(prescale(v, spec));
    human.push_back(ratings.at(id));
  }
  FitOptions opts;
  opts.grid_step = 0.01;
  opts.folds = 5;
  opts.seed = 0;
  const FitResult fit = fit_mapping_theta(x01, human, MappingFamily::Gamma, opts);
  c.expect(fit.theta >= 1.9 && fit.theta <= 2.1, "recovered " + fmt(fit.theta));
  double best = -2.0;
  for (double t : theta_grid(opts)) best = std::max(best, cv_objective(x01, human, MappingFamily::Gamma, t, fit.fold_plan));
  c.expect(fit.objective >= best - 1e-9, "selected objective below grid maximum");
  return {c.ok(), c.summary() + ", " + std::to_string(x01.size()) + " points, theta " + fmt(fit.theta)};
}

std::string directory_bytes(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += f.filename().string() + "\n" + read_text_file(f);
  return all;
}

Outcome determinism(const fs::path& scratch) {
  Checks c;
  const std::vector<std::pair<std::string, int>> runs = {{"jobs1_a", 1}, {"jobs1_b", 1}, {"jobs8_a", 8}, {"jobs8_b", 8}};
  std::vector<std::string> outputs;
  for (const auto& [name, jobs] : runs) {
    cli::Options o;
    o.manifest = (kFixtures / "synthetic" / "manifest.json").string();
    o.out = (scratch / name).string();
    o.jobs = jobs;
    std::ostringstream log;
    const int code = cli::cmd_evaluate(o, log);
    c.expect(code == cli::kOk, name + " exit " + std::to_string(code));
    outputs.push_back(directory_bytes(o.out));
  }
  c.expect(fs::exists(scratch / "jobs1_a" / "model_a.scorecard.json") &&
               fs::exists(scratch / "jobs1_a" / "model_b.scorecard.json"),
           "two scorecards written");
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    c.expect(outputs[i] == outputs[0], runs[i].first + " differs from " + runs[0].first);
  }
  return {c.ok(), c.summary()};
}

Outcome correlation_machinery(const fs::path& scratch) {
  Checks c;
  cli::Options o;
  o.scorecards = (kFixtures / "report" / "scorecards").string();
  o.human = (kFixtures / "report" / "ratings.csv").string();
  o.out = (scratch / "report").string();
  std::ostringstream log;
  c.expect(cli::cmd_report(o, log) == cli::kOk, "report exit: " + log.str());

  const auto ratings = mean_ratings(read_human_ratings(o.human));
  std::vector<double> overall, human;
  for (const auto& e : fs::directory_iterator(o.scorecards)) {
    const auto doc = read_json_file(e.path());
    overall.push_back(doc["overall"].get<double>());
    human.push_back(ratings.at(doc["model"].get<std::string>()));
  }
  const Correlation expected = correlations(overall, human);
  std::ifstream in(fs::path(o.out) / "correlation.csv");
  std::string line;
  std::map<std::string, double> got;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto row = split_csv_line(line);
    got[row.at(0)] = std::stod(row.at(1));
  }
  c.expect(std::abs(got["pearson_r"] - expected.pearson) <= 1e-12, "pearson " + fmt(got["pearson_r"]));
  c.expect(std::abs(got["spearman_rho"] - expected.spearman) <= 1e-12, "spearman " + fmt(got["spearman_rho"]));
  const fs::path svg = fs::path(o.out) / "scatter.svg";
  c.expect(fs::exists(svg) && read_text_file(svg).find("<svg") != std::string::npos, "scatter.svg rendered");

  TestRng rng(31337);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(3, 30));
    std::vector<double> x(n), y(n), affine(n), monotone(n);
    const double a = rng.uniform(0.1, 10), b = rng.uniform(-10, 10);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = rng.normal();
      y[k] = x[k] + rng.normal();
      affine[k] = a * x[k] + b;
      monotone[k] = std::exp(x[k]) + std::pow(x[k], 3);
    }
    c.expect(std::abs(pearson(affine, y) - pearson(x, y)) <= 1e-12, "affine invariance trial " + std::to_string(i));
    c.expect(std::abs(spearman(monotone, y) - spearman(x, y)) <= 1e-12, "rank invariance trial " + std::to_string(i));
  }
  return {c.ok(), c.summary() + ", r " + fmt(expected.pearson) + " rho " + fmt(expected.spearman)};
}

struct Criterion {
  std::string name;
  double limit_s;  ///< 0 for no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "eeval_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const std::vector<Criterion> criteria = {
      {"mapping-table conformance", 1.0, mapping_table},
      {"anchor conformance", 0.0, anchors},
      {"DTW and discrete-Frechet oracle equivalence", 10.0, dtw_frechet},
      {"FVD analytic check", 0.0, fvd_check},
      {"camera pipeline", 0.0, camera},
      {"MRC hand cases", 0.0, mrc_cases},
      {"score arithmetic", 0.0, score_arithmetic},
      {"calibration recovery", 30.0, calibration},
      {"end-to-end determinism", 60.0, [&] { return determinism(scratch); }},
      {"correlation machinery", 0.0, [&] { return correlation_machinery(scratch); }},
  };

  int failed = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = crit.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (crit.limit_s > 0 && secs >= crit.limit_s) {
      out.ok = false;
      out.detail += ", runtime limit " + fmt(crit.limit_s) + " s exceeded";
    }
    char timing[48];
    std::snprintf(timing, sizeof timing, " [%.3f s]", secs);
    std::cout << (out.ok ? "PASS " : "FAIL ") << crit.name << ": " << out.detail << timing << "\n";
    if (!out.ok) ++failed;
  }
  fs::remove_all(scratch);
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
