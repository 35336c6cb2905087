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

// The `stad` command implementations, callable without the CLI front end.

#ifndef STAD_COMMANDS_HPP_
#define STAD_COMMANDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "stad/config.hpp"
#include "stad/pipeline.hpp"
#include "stad/synth.hpp"

namespace stad {

// Writes dataset.jsonl, schema.json and synth.json into `out_dir`.
void cmd_synth(const SynthParams& params, const std::filesystem::path& out_dir);

// Samples low-resource splits into config.data.splits:
// train/dev/test/unlabeled.jsonl and manifest.json.
void cmd_prepare(const ExperimentConfig& config, std::ostream& log);

// Loads prepared splits and featurizes them.
PreparedData load_prepared(const ExperimentConfig& config);

// Per system under output_dir/<system>/: seed_<s>.json, aggregate.json,
// partition_seed_<s>.jsonl, model_seed_<s>.ckpt. With several systems also
// comparison.txt; with `ablation` also ablation.txt and ablation.json.
// Refuses an existing output directory unless `overwrite` is set.
void cmd_run(const ExperimentConfig& config, bool overwrite, bool ablation,
             std::ostream& log);

enum class SweepAxis { kThreshold, kFixedN, kKTrain };
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

// Writes output_dir/sweep_<axis>.csv with columns
//   system,axis,value,mean_micro_f1,std_micro_f1,seeds
// Threshold and fixed-N points are scored on dev, k_train points on test.
void cmd_sweep(const ExperimentConfig& config, SweepAxis axis, bool overwrite,
               std::ostream& log);

struct AnalyzeInputs {
  std::filesystem::path schema;
  std::filesystem::path dump;
  std::optional<std::filesystem::path> report;    // aggregate.json of the system
  std::optional<std::filesystem::path> baseline;  // aggregate.json to diff against
  std::filesystem::path out_dir;
};

// Writes histogram.csv, relations.csv and (with a report) top_n.csv.
void cmd_analyze(const AnalyzeInputs& inputs, std::ostream& log);

}  // namespace stad

#endif  // STAD_COMMANDS_HPP_
