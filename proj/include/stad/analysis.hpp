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

// Experiment-level analyses and report serialization.

#ifndef STAD_ANALYSIS_HPP_
#define STAD_ANALYSIS_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "stad/corpus.hpp"
#include "stad/metrics.hpp"
#include "stad/selftrain.hpp"

namespace stad {

// |C+| -> count, with confident instances at size 1 and hard ones at size M.
std::map<int, long> candidate_size_histogram(const Partition& partition,
                                             int num_relations);

// Each ambiguous instance adds 1/|C+| to every relation in its C+.
std::vector<double> weighted_ambiguous_counts(std::span<const AmbiguousInstance> ambiguous,
                                              int num_relations);

struct SeedAggregate {
  double mean = 0;
  std::optional<double> stddev;  // sample (n-1) deviation; needs >= 2 values
};

SeedAggregate aggregate(std::span<const double> values);
// Aggregates micro-F1. Throws std::invalid_argument on an empty list.
SeedAggregate aggregate_seeds(std::span<const MetricReport> reports);

struct PartitionStats {
  long confident = 0;
  long ambiguous = 0;
  long hard = 0;
  std::map<int, long> histogram;
  std::vector<double> weighted_ambiguous;
  // Diagnostics against the hidden gold labels of the unlabeled pool.
  std::optional<double> confident_accuracy;
  std::optional<double> ambiguous_gold_coverage;
};

PartitionStats partition_stats(const Partition& partition, int num_relations,
                               std::span<const std::optional<RelationId>> hidden_gold);

struct SeedRun {
  std::uint64_t seed = 0;
  MetricReport report;
  std::optional<PartitionStats> partition;  // absent for the supervised system
  int teacher_epoch = 0;
  int student_epoch = 0;
};

struct ExperimentResult {
  std::string system;
  std::string eval_split;
  std::vector<SeedRun> runs;
  SeedAggregate micro;
  SeedAggregate macro;

  // Recomputes `micro` and `macro` from `runs`.
  void finalize();
  // Seed-averaged per-relation F1 and top-n curve.
  std::vector<double> mean_relation_f1() const;
  std::map<int, double> mean_top_n() const;
};

nlohmann::ordered_json to_json(const ExperimentResult& result, const RelationSchema& schema);
nlohmann::ordered_json to_json(const SeedRun& run, const RelationSchema& schema);
ExperimentResult experiment_result_from_json(const nlohmann::json& j,
                                             const RelationSchema& schema);

// Fixed-layout table: one row per system, one column per dataset, cells are
// "mean +- std" in percent.
struct ComparisonCell {
  std::string system;
  std::string dataset;
  SeedAggregate micro;
};
std::string comparison_table(std::span<const ComparisonCell> cells);

// CSV emitters for external plotting.
void write_histogram_csv(std::ostream& out, const std::map<int, long>& histogram);
void write_weighted_counts_csv(std::ostream& out, const RelationSchema& schema,
                               std::span<const double> weights,
                               std::span<const double> f1,
                               std::span<const double> baseline_f1);
void write_top_n_csv(std::ostream& out, const std::map<int, double>& top_n,
                     const std::map<int, double>* baseline = nullptr);

std::string format_double(double v);

}  // namespace stad

#endif  // STAD_ANALYSIS_HPP_
