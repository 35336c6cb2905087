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

// Command-line front end: prepare, run, sweep, analyze, synth.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stad/commands.hpp"
#include "stad/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> systems;
  std::optional<double> threshold;
  std::optional<int> fixed_n;
  std::optional<int> k_train;
  std::string out;
};

void add_config_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory (overrides output_dir)");
}

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seeds", o.seeds, "Run seeds (overrides seeds)")->delimiter(',');
  cmd->add_option("--system", o.systems, "System(s) to run")->delimiter(',');
  cmd->add_option("--threshold", o.threshold, "Partition threshold T")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--fixed-n", o.fixed_n, "Fixed candidate-set size N");
}

stad::ExperimentConfig resolve(const Overrides& o, bool sweep) {
  auto config = stad::load_config(o.config_path);
  if (o.seed) config.split_seed = *o.seed;
  if (!o.seeds.empty()) config.seeds = o.seeds;
  if (!o.systems.empty()) (sweep ? config.sweep.systems : config.systems) = o.systems;
  if (o.threshold) config.partition.threshold = *o.threshold;
  if (o.fixed_n) {
    config.partition.mode = stad::PartitionMode::kFixedN;
    config.partition.fixed_n = *o.fixed_n;
  }
  if (o.k_train) config.k_train = *o.k_train;
  if (!o.out.empty()) config.output_dir = o.out;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STAD: self-training with ambiguous data for relation extraction"};
  app.require_subcommand(1);

  Overrides o;

  auto* prepare = app.add_subcommand("prepare", "Sample low-resource splits");
  add_config_flags(prepare, o);
  prepare->add_option("--seed", o.seed, "Split sampling seed");
  prepare->add_option("--k-train", o.k_train, "Labeled instances per relation");

  bool overwrite = false;
  bool ablation = false;
  auto* run = app.add_subcommand("run", "Train and evaluate systems");
  add_config_flags(run, o);
  add_run_flags(run, o);
  run->add_flag("--overwrite", overwrite, "Replace an existing output directory");
  run->add_flag("--ablation", ablation, "Also run the ablation matrix");

  std::string axis = "threshold_T";
  auto* sweep = app.add_subcommand("sweep", "Grid sweep over T, N or k_train");
  add_config_flags(sweep, o);
  add_run_flags(sweep, o);
  sweep->add_option("--axis", axis, "threshold_T, fixed_n or k_train");
  sweep->add_flag("--overwrite", overwrite, "Replace an existing CSV");

  stad::AnalyzeInputs analyze_in;
  std::string report, baseline;
  auto* analyze = app.add_subcommand("analyze", "Summarize a partition dump");
  analyze->add_option("--schema", analyze_in.schema, "Relation schema")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--dump", analyze_in.dump, "Partition dump (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--report", report, "aggregate.json of the analyzed system");
  analyze->add_option("--baseline", baseline, "aggregate.json to compare against");
  analyze->add_option("--out", analyze_in.out_dir, "Output directory")->required();

  stad::SynthParams synth_params;
  std::string synth_out;
  bool disjoint_pairs = false;
  auto* synth = app.add_subcommand("synth", "Generate the synthetic corpus");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--relations", synth_params.relations);
  synth->add_option("--pairs", synth_params.confusable_pairs, "Confusable relation pairs");
  synth->add_flag("--disjoint-pairs", disjoint_pairs,
                    "Use disjoint pairs instead of a cycle");
  synth->add_option("--templates", synth_params.templates_per_relation);
  synth->add_option("--phrase-length", synth_params.phrase_length);
  synth->add_option("--instances", synth_params.instances_per_relation,
                    "Instances per relation");
  synth->add_option("--noise", synth_params.noise_rate);
  synth->add_option("--shared-rate", synth_params.shared_rate);
  synth->add_option("--filler-vocab", synth_params.filler_vocab);
  synth->add_option("--entity-vocab", synth_params.entity_vocab);
  synth->add_option("--context-fillers", synth_params.context_fillers);
  synth->add_option("--test-fraction", synth_params.test_fraction);
  synth->add_option("--seed", synth_params.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*prepare) {
      stad::cmd_prepare(resolve(o, false), std::cout);
    } else if (*run) {
      stad::cmd_run(resolve(o, false), overwrite, ablation, std::cout);
    } else if (*sweep) {
      const auto sweep_axis = stad::parse_sweep_axis(axis);
      stad::cmd_sweep(resolve(o, true), sweep_axis, overwrite, std::cout);
    } else if (*analyze) {
      if (!report.empty()) analyze_in.report = report;
      if (!baseline.empty()) analyze_in.baseline = baseline;
      stad::cmd_analyze(analyze_in, std::cout);
    } else if (*synth) {
      if (disjoint_pairs) synth_params.overlapping_pairs = false;
      synth_params.validate();
      stad::cmd_synth(synth_params, synth_out);
    }
  } catch (const stad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const stad::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
