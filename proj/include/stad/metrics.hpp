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

// Classification metrics: micro/macro F1 and top-n F1.

#ifndef STAD_METRICS_HPP_
#define STAD_METRICS_HPP_

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stad/corpus.hpp"

namespace stad {

struct PredictionRecord {
  RelationId gold = 0;
  Eigen::VectorXd p;
};

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Pooled counts over the evaluated relations. A relation excluded from
// evaluation (the negative class) still produces false positives and false
// negatives when it is confused with an evaluated one.
struct MicroCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  PrecisionRecall score() const;
};

MicroCounts count_micro(std::span<const RelationId> gold,
                        std::span<const RelationId> predicted,
                        std::optional<RelationId> excluded);

double micro_f1(std::span<const RelationId> gold,
                std::span<const RelationId> predicted,
                std::optional<RelationId> excluded = std::nullopt);

// Per relation, indexed by relation id. The excluded relation gets zeros.
std::vector<PrecisionRecall> per_relation_scores(std::span<const RelationId> gold,
                                                 std::span<const RelationId> predicted,
                                                 int num_relations,
                                                 std::optional<RelationId> excluded);

double macro_f1(std::span<const RelationId> gold,
                std::span<const RelationId> predicted, int num_relations,
                std::optional<RelationId> excluded = std::nullopt);

// Record-based forms. Prediction is argmax p with ties to the lowest index;
// the schema's negative relation, if any, is excluded from the score.
// Throw std::invalid_argument on empty input.
double micro_f1(std::span<const PredictionRecord> records, const RelationSchema& schema);
double macro_f1(std::span<const PredictionRecord> records, const RelationSchema& schema);

// A record counts as correct when gold is among its n most probable labels.
double top_n_f1(std::span<const PredictionRecord> records,
                const RelationSchema& schema, int n);

// Labels in descending probability, ties by ascending index.
std::vector<RelationId> rank_labels(const Eigen::Ref<const Eigen::VectorXd>& p);

struct MetricReport {
  double micro_f1 = 0;
  double macro_f1 = 0;
  std::vector<PrecisionRecall> per_relation;
  std::map<int, double> top_n;  // n -> top-n micro F1, n = 1..M
  std::vector<long> support;    // gold count per relation
};

MetricReport evaluate(std::span<const PredictionRecord> records,
                      const RelationSchema& schema);

// Builds records from an N x M probability matrix.
std::vector<PredictionRecord> make_records(const Eigen::MatrixXd& probs,
                                           std::span<const RelationId> gold);

}  // namespace stad

#endif  // STAD_METRICS_HPP_
