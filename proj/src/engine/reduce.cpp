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

#include "eeval/distribution_metrics.hpp"
#include "eeval/engine.hpp"

namespace eeval {
namespace {

ModelMetric pooled_fvd(const std::vector<SampleRecord>& records, std::vector<MetricFailure>& failures) {
  ModelMetric out{"fvd", MetricStatus::Skipped, {}, {}, 0, ""};
  std::vector<EmbeddingSequence> gen, gt;
  bool errored = false;
  for (const auto& r : records) {
    const MetricValue& v = r.metric("fvd");
    if (v.status == MetricStatus::Error) errored = true;
    if (v.status == MetricStatus::Pooled && r.gen_clip && r.gt_clip) {
      gen.push_back(*r.gen_clip);
      gt.push_back(*r.gt_clip);
    }
  }
  if (gen.empty()) {
    out.status = errored ? MetricStatus::Error : MetricStatus::Skipped;
    out.note = errored ? "every sample failed" : "no sample has clip features for both videos";
    return out;
  }
  try {
    const Eigen::MatrixXd gen_features = stack_clip_features(gen);
    const Eigen::MatrixXd gt_features = stack_clip_features(gt);
    out.raw = fvd(gaussian_stats(gt_features), gaussian_stats(gen_features));
    out.status = MetricStatus::Ok;
    out.samples = gen.size();
    out.note = "pooled gen_rows=" + std::to_string(gen_features.rows()) + " gt_rows=" + std::to_string(gt_features.rows());
  } catch (const Error& e) {
    out.status = MetricStatus::Error;
    out.note = e.what();
    failures.push_back({"(pooled)", "fvd", e.code(), e.message()});
  }
  return out;
}

ModelMetric mean_metric(const std::string& metric, const std::vector<SampleRecord>& records) {
  ModelMetric out{metric, MetricStatus::Skipped, {}, {}, 0, ""};
  double sum = 0.0;
  std::size_t errors = 0;
  std::optional<std::string> common_reason;
  bool reasons_agree = true;
  for (const auto& r : records) {
    const MetricValue& v = r.metric(metric);
    if (v.status == MetricStatus::Ok) {
      sum += *v.raw;
      ++out.samples;
    } else if (v.status == MetricStatus::Error) {
      ++errors;
    } else if (!common_reason) {
      common_reason = v.note;
    } else if (*common_reason != v.note) {
      reasons_agree = false;
    }
  }
  if (out.samples > 0) {
    out.status = MetricStatus::Ok;
    out.raw = sum / static_cast<double>(out.samples);
    if (errors > 0) out.note = std::to_string(errors) + " sample(s) failed";
  } else if (errors > 0) {
    out.status = MetricStatus::Error;
    out.note = "every sample failed";
  } else {
    out.note = reasons_agree && common_reason ? *common_reason : "no sample provides this metric";
  }
  return out;
}

}  // namespace

const ModelMetric& ScoreCard::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.metric == name) return m;
  }
  fail(Errc::ConfigError, "scorecard has no metric '" + std::string(name) + "'");
}

ScoreCard reduce_model(const std::vector<SampleRecord>& records, const EvaluationPlan& plan) {
  if (records.empty()) fail(Errc::NoRecords, "no sample records to reduce");
  ScoreCard card;
  card.model = records.front().model;
  for (const auto& r : records) {
    if (r.model != card.model) fail(Errc::ConfigError, "records from different models in one reduction");
    card.failures.insert(card.failures.end(), r.failures.begin(), r.failures.end());
  }

  std::map<std::string, std::vector<double>> group_scores;
  for (const auto& info : metric_catalog()) {
    const std::string name(info.name);
    ModelMetric m;
    if (!plan.enabled(name)) {
      m = {name, MetricStatus::Skipped, {}, {}, 0, "disabled"};
    } else if (name == "fvd") {
      m = pooled_fvd(records, card.failures);
    } else {
      m = mean_metric(name, records);
    }
    if (m.status == MetricStatus::Ok) {
      m.mapped = map_value(*m.raw, plan.mappings.at(name));
      group_scores[std::string(info.group)].push_back(*m.mapped);
    }
    card.metrics.push_back(std::move(m));
  }

  if (!group_scores.empty()) {
    try {
      const Aggregate agg = aggregate_overall(group_scores, plan.weights);
      card.group_means = agg.group_means;
      card.overall = agg.overall;
    } catch (const Error& e) {
      if (e.code() != Errc::NoGroups) throw;
    }
  }
  card.samples = records;
  return card;
}

}  // namespace eeval
