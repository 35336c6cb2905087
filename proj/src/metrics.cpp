// Copyright 2026 The STAD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stad/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>


namespace stad {

namespace {

PrecisionRecall from_counts(long tp, long fp, long fn) {
  PrecisionRecall s;
  s.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  s.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  // 2PR / (P + R) in count form; exact when fp == fn
  s.f1 = tp > 0 ? static_cast<double>(2 * tp) / (2 * tp + fp + fn) : 0.0;
  return s;
}

void check_sizes(std::span<const RelationId> gold,
                 std::span<const RelationId> predicted) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("gold and predicted lengths differ");
  }
  if (gold.empty()) throw std::invalid_argument("no records to evaluate");
}

std::vector<RelationId> top_n_predictions(std::span<const PredictionRecord> records,
                                          int n) {
  std::vector<RelationId> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const auto ranked = rank_labels(r.p);
    const auto end = ranked.begin() + std::min<std::size_t>(n, ranked.size());
    out.push_back(std::find(ranked.begin(), end, r.gold) != end ? r.gold
                                                                 : ranked.front());
  }
  return out;
}

std::vector<RelationId> golds(std::span<const PredictionRecord> records) {
  std::vector<RelationId> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.gold);
  return out;
}

}  // namespace

PrecisionRecall MicroCounts::score() const { return from_counts(tp, fp, fn); }

MicroCounts count_micro(std::span<const RelationId> gold,
                        std::span<const RelationId> predicted,
                        std::optional<RelationId> excluded) {
  check_sizes(gold, predicted);
  MicroCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool gold_pos = gold[i] != excluded;
    const bool pred_pos = predicted[i] != excluded;
    if (gold[i] == predicted[i]) {
      if (gold_pos) ++c.tp;
      continue;
    }
    if (pred_pos) ++c.fp;
    if (gold_pos) ++c.fn;
  }
  return c;
}

double micro_f1(std::span<const RelationId> gold,
                std::span<const RelationId> predicted,
                std::optional<RelationId> excluded) {
  return count_micro(gold, predicted, excluded).score().f1;
}

std::vector<PrecisionRecall> per_relation_scores(std::span<const RelationId> gold,
                                                 std::span<const RelationId> predicted,
                                                 int num_relations,
                                                 std::optional<RelationId> excluded) {
  check_sizes(gold, predicted);
  std::vector<long> tp(num_relations), fp(num_relations), fn(num_relations);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == predicted[i]) {
      ++tp[gold[i]];
    } else {
      ++fp[predicted[i]];
      ++fn[gold[i]];
    }
  }
  std::vector<PrecisionRecall> out(num_relations);
  for (int r = 0; r < num_relations; ++r) {
    if (r == excluded) continue;
    out[r] = from_counts(tp[r], fp[r], fn[r]);
  }
  return out;
}

double macro_f1(std::span<const RelationId> gold,
                std::span<const RelationId> predicted, int num_relations,
                std::optional<RelationId> excluded) {
  const auto scores = per_relation_scores(gold, predicted, num_relations, excluded);
  double sum = 0;
  int count = 0;
  for (int r = 0; r < num_relations; ++r) {
    if (r == excluded) continue;
    sum += scores[r].f1;
    ++count;
  }
  return count > 0 ? sum / count : 0.0;
}

std::vector<RelationId> rank_labels(const Eigen::Ref<const Eigen::VectorXd>& p) {
  std::vector<RelationId> order(static_cast<std::size_t>(p.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&p](RelationId a, RelationId b) { return p[a] > p[b]; });
  return order;
}

double micro_f1(std::span<const PredictionRecord> records, const RelationSchema& schema) {
  return top_n_f1(records, schema, 1);
}

double macro_f1(std::span<const PredictionRecord> records, const RelationSchema& schema) {
  const auto pred = top_n_predictions(records, 1);
  const auto gold = golds(records);
  return macro_f1(gold, pred, schema.size(), schema.negative());
}

double top_n_f1(std::span<const PredictionRecord> records,
                const RelationSchema& schema, int n) {
  if (n < 1 || n > schema.size()) {
    throw std::invalid_argument("top-n requires 1 <= n <= M");
  }
  const auto pred = top_n_predictions(records, n);
  const auto gold = golds(records);
  return micro_f1(gold, pred, schema.negative());
}

MetricReport evaluate(std::span<const PredictionRecord> records,
                      const RelationSchema& schema) {
  MetricReport report;
  const auto gold = golds(records);
  const auto pred = top_n_predictions(records, 1);
  report.micro_f1 = micro_f1(gold, pred, schema.negative());
  report.macro_f1 = macro_f1(gold, pred, schema.size(), schema.negative());
  report.per_relation =
      per_relation_scores(gold, pred, schema.size(), schema.negative());
  report.support.assign(schema.size(), 0);
  for (auto g : gold) ++report.support[g];
  for (int n = 1; n <= schema.size(); ++n) {
    report.top_n[n] = top_n_f1(records, schema, n);
  }
  return report;
}

std::vector<PredictionRecord> make_records(const Eigen::MatrixXd& probs,
                                           std::span<const RelationId> gold) {
  if (static_cast<std::size_t>(probs.rows()) != gold.size()) {
    throw std::invalid_argument("probability rows and gold labels differ in length");
  }
  std::vector<PredictionRecord> out(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    out[i].gold = gold[i];
    out[i].p = probs.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return out;
}

}  // namespace stad
