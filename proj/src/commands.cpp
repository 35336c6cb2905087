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

#include "stad/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "stad/ablation.hpp"
#include "stad/errors.hpp"

namespace stad {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  open_out(path) << j.dump(2) << '\n';
}

std::string slug(std::string_view name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c))
               ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
               : '-';
  }
  return out;
}

// Empty or absent directories are fine; anything else needs `overwrite`.
void claim_output_dir(const fs::path& dir, bool overwrite) {
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!overwrite) {
      throw ConfigError("output directory " + dir.string() +
                        " is not empty; pass --overwrite to replace it");
    }
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
}

PipelineOptions pipeline_options(const ExperimentConfig& config) {
  PipelineOptions options;
  options.train = config.train;
  options.partition = config.partition;
  options.seeds = config.seeds;
  return options;
}

SamplingOptions sampling_options(const ExperimentConfig& config, int k_train) {
  return {k_train, config.k_dev, config.split_seed, config.exclude_negative};
}

std::vector<RelationInstance> load_split(const fs::path& path, const RelationSchema& schema) {
  if (!fs::exists(path)) {
    throw DataError("missing split file " + path.string() + "; run `stad prepare` first");
  }
  return load_dataset(path, schema);
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void cmd_synth(const SynthParams& params, const fs::path& out_dir) {
  const auto corpus = generate_synthetic(params);
  fs::create_directories(out_dir);
  save_dataset(out_dir / "dataset.jsonl", corpus.instances, corpus.schema);
  save_schema(out_dir / "schema.json", corpus.schema);
  ordered_json j;
  j["relations"] = params.relations;
  j["confusable_pairs"] = params.confusable_pairs;
  j["overlapping_pairs"] = params.overlapping_pairs;
  j["templates_per_relation"] = params.templates_per_relation;
  j["phrase_length"] = params.phrase_length;
  j["instances_per_relation"] = params.instances_per_relation;
  j["filler_vocab"] = params.filler_vocab;
  j["context_fillers"] = params.context_fillers;
  j["entity_vocab"] = params.entity_vocab;
  j["noise_rate"] = params.noise_rate;
  j["shared_rate"] = params.shared_rate;
  j["test_fraction"] = params.test_fraction;
  j["seed"] = params.seed;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : corpus.confusable_pairs) {
    pairs.push_back({corpus.schema.name(a), corpus.schema.name(b)});
  }
  j["pairs"] = std::move(pairs);
  j["instances"] = corpus.instances.size();
  write_json(out_dir / "synth.json", j);
}

void cmd_prepare(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  const auto schema = load_schema(config.data.schema);
  std::vector<std::string> warnings;
  const auto data = load_dataset(config.data.dataset, schema, &warnings);
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  const auto bundle = sample_low_resource(data, schema, sampling_options(config, config.k_train));

  const auto& dir = config.data.splits;
  fs::create_directories(dir);
  save_dataset(dir / "train.jsonl", bundle.train, schema);
  save_dataset(dir / "dev.jsonl", bundle.dev, schema);
  save_dataset(dir / "test.jsonl", bundle.test, schema);
  save_dataset(dir / "unlabeled.jsonl", bundle.unlabeled, schema);

  ordered_json m;
  m["dataset"] = config.data.dataset.string();
  m["schema"] = config.data.schema.string();
  m["seed"] = config.split_seed;
  m["k_train"] = config.k_train;
  m["k_dev"] = config.k_dev;
  m["exclude_negative"] = config.exclude_negative;
  m["counts"] = {{"train", bundle.train.size()},
                 {"dev", bundle.dev.size()},
                 {"test", bundle.test.size()},
                 {"unlabeled", bundle.unlabeled.size()}};
  ordered_json per = ordered_json::object();
  for (int r = 0; r < schema.size(); ++r) {
    const auto n = std::count_if(bundle.train.begin(), bundle.train.end(),
                                 [r](const RelationInstance& x) { return x.gold == r; });
    if (n > 0) per[schema.name(r)] = n;
  }
  m["train_per_relation"] = std::move(per);
  write_json(dir / "manifest.json", m);
  log << "prepared " << bundle.train.size() << " train, " << bundle.dev.size() << " dev, "
      << bundle.test.size() << " test, " << bundle.unlabeled.size() << " unlabeled -> "
      << dir.string() << '\n';
}

PreparedData load_prepared(const ExperimentConfig& config) {
  const auto schema = load_schema(config.data.schema);
  const auto& dir = config.data.splits;
  SplitBundle bundle;
  bundle.train = load_split(dir / "train.jsonl", schema);
  bundle.dev = load_split(dir / "dev.jsonl", schema);
  bundle.test = load_split(dir / "test.jsonl", schema);
  bundle.unlabeled = load_split(dir / "unlabeled.jsonl", schema);
  return PreparedData::from_bundle(bundle, schema, config.features);
}

void cmd_run(const ExperimentConfig& config, bool overwrite, bool ablation,
             std::ostream& log) {
  config.validate();
  std::vector<System> systems;
  for (const auto& s : config.systems) systems.push_back(parse_system(s));
  const auto data = load_prepared(config);
  const auto options = pipeline_options(config);
  options.partition.validate(data.schema.size());

  claim_output_dir(config.output_dir, overwrite);
  save_config(config.output_dir / "config.json", config);

  TeacherCache cache;
  std::vector<ComparisonCell> cells;
  for (auto system : systems) {
    const auto recipe = recipe_for(system);
    std::vector<SeedArtifacts> artifacts;
    const auto result = run_pipeline(data, recipe, options, &cache, &artifacts);
    const auto dir = config.output_dir / slug(recipe.name);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      const auto& run = result.runs[i];
      const auto tag = std::to_string(run.seed);
      write_json(dir / ("seed_" + tag + ".json"), to_json(run, data.schema));
      save_checkpoint(dir / ("model_seed_" + tag + ".ckpt"),
                      {artifacts[i].student, data.schema.fingerprint(),
                       data.features.fingerprint()});
      if (artifacts[i].partition) {
        auto out = open_out(dir / ("partition_seed_" + tag + ".jsonl"));
        write_partition_dump(out, *artifacts[i].partition, data.unlabeled,
                             artifacts[i].teacher_probs, data.schema);
      }
    }
    write_json(dir / "aggregate.json", to_json(result, data.schema));
    cells.push_back({recipe.name, config.name, result.micro});
    log << recipe.name << ": micro-F1 " << format_double(result.micro.mean);
    if (result.micro.stddev) log << " +- " << format_double(*result.micro.stddev);
    log << " over " << result.runs.size() << " seed(s)\n";
  }
  open_out(config.output_dir / "comparison.txt") << comparison_table(cells);

  if (ablation) {
    const auto table = ablation_matrix(data, options, &cache);
    open_out(config.output_dir / "ablation.txt") << format_ablation(table);
    ordered_json j = ordered_json::array();
    for (const auto& row : table.rows) {
      j.push_back({{"name", row.name},
                   {"mean", row.micro.mean},
                   {"std", row.micro.stddev ? json(*row.micro.stddev) : json(nullptr)},
                   {"delta", row.delta}});
    }
    write_json(config.output_dir / "ablation.json", j);
    log << format_ablation(table);
  }
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "threshold_T" || name == "threshold") return SweepAxis::kThreshold;
  if (name == "fixed_n") return SweepAxis::kFixedN;
  if (name == "k_train") return SweepAxis::kKTrain;
  throw ConfigError("unknown sweep axis '" + std::string(name) +
                    "'; valid axes: threshold_T, fixed_n, k_train");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kThreshold: return "threshold_T";
    case SweepAxis::kFixedN: return "fixed_n";
    case SweepAxis::kKTrain: return "k_train";
  }
  return "unknown";
}

void cmd_sweep(const ExperimentConfig& config, SweepAxis axis, bool overwrite,
               std::ostream& log) {
  config.validate();
  std::vector<System> systems;
  for (const auto& s : config.sweep.systems) systems.push_back(parse_system(s));
  const std::size_t points = axis == SweepAxis::kThreshold ? config.sweep.thresholds.size()
                             : axis == SweepAxis::kFixedN  ? config.sweep.fixed_n.size()
                                                           : config.sweep.k_train.size();
  if (points == 0) throw ConfigError("sweep grid is empty");
  if (systems.empty()) throw ConfigError("sweep.systems is empty");

  const auto csv_path =
      config.output_dir / ("sweep_" + std::string(to_string(axis)) + ".csv");
  if (fs::exists(csv_path) && !overwrite) {
    throw ConfigError(csv_path.string() + " exists; pass --overwrite to replace it");
  }

  struct Row {
    std::string system;
    std::string value;
    SeedAggregate micro;
    std::size_t seeds;
  };
  std::vector<Row> rows;

  std::optional<PreparedData> shared;
  std::optional<RelationSchema> schema;
  std::vector<RelationInstance> corpus;
  if (axis == SweepAxis::kKTrain) {
    schema = load_schema(config.data.schema);
    corpus = load_dataset(config.data.dataset, *schema);
  } else {
    shared = load_prepared(config);
  }

  std::vector<TeacherCache> caches(points);
  std::vector<std::optional<PreparedData>> per_point(points);
  for (auto system : systems) {
    const auto recipe = recipe_for(system);
    for (std::size_t i = 0; i < points; ++i) {
      auto options = pipeline_options(config);
      options.eval_split = EvalSplit::kDev;
      const PreparedData* data = shared ? &*shared : nullptr;
      TeacherCache* cache = &caches.front();
      std::string value;
      switch (axis) {
        case SweepAxis::kThreshold:
          options.partition.threshold = config.sweep.thresholds[i];
          value = format_value(config.sweep.thresholds[i]);
          break;
        case SweepAxis::kFixedN:
          options.partition.mode = PartitionMode::kFixedN;
          options.partition.fixed_n = config.sweep.fixed_n[i];
          value = std::to_string(config.sweep.fixed_n[i]);
          break;
        case SweepAxis::kKTrain: {
          const int k = config.sweep.k_train[i];
          if (!per_point[i]) {
            per_point[i] = PreparedData::from_bundle(
                sample_low_resource(corpus, *schema, sampling_options(config, k)), *schema,
                config.features);
          }
          data = &*per_point[i];
          cache = &caches[i];
          options.eval_split = EvalSplit::kTest;
          value = std::to_string(k);
          break;
        }
      }
      const auto result = run_pipeline(*data, recipe, options, cache);
      rows.push_back({recipe.name, value, result.micro, result.runs.size()});
      log << recipe.name << " " << to_string(axis) << "=" << value << ": "
          << format_double(result.micro.mean) << '\n';
    }
  }

  fs::create_directories(config.output_dir);
  auto out = open_out(csv_path);
  out << "system,axis,value,mean_micro_f1,std_micro_f1,seeds\n";
  for (const auto& r : rows) {
    out << r.system << ',' << to_string(axis) << ',' << r.value << ','
        << format_double(r.micro.mean) << ','
        << (r.micro.stddev ? format_double(*r.micro.stddev) : "") << ',' << r.seeds << '\n';
  }
}

void cmd_analyze(const AnalyzeInputs& inputs, std::ostream& log) {
  const auto schema = load_schema(inputs.schema);
  const auto entries = load_partition_dump(inputs.dump, schema);
  const auto partition = partition_from_dump(entries, schema.size());

  auto load_report = [&schema](const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report " + path.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw DataError("cannot parse report " + path.string() + ": " + e.what());
    }
    return experiment_result_from_json(j, schema);
  };
  std::optional<ExperimentResult> report, baseline;
  if (inputs.report) report = load_report(*inputs.report);
  if (inputs.baseline) baseline = load_report(*inputs.baseline);

  fs::create_directories(inputs.out_dir);
  const auto histogram = candidate_size_histogram(partition, schema.size());
  {
    auto out = open_out(inputs.out_dir / "histogram.csv");
    write_histogram_csv(out, histogram);
  }
  const auto weights = weighted_ambiguous_counts(partition.ambiguous, schema.size());
  const auto f1 = report ? report->mean_relation_f1() : std::vector<double>{};
  const auto base_f1 = baseline ? baseline->mean_relation_f1() : std::vector<double>{};
  {
    auto out = open_out(inputs.out_dir / "relations.csv");
    write_weighted_counts_csv(out, schema, weights, f1, base_f1);
  }
  if (report) {
    const auto top = report->mean_top_n();
    const auto base_top = baseline ? baseline->mean_top_n() : std::map<int, double>{};
    auto out = open_out(inputs.out_dir / "top_n.csv");
    write_top_n_csv(out, top, baseline ? &base_top : nullptr);
  }
  log << "analyzed " << entries.size() << " instances: " << partition.confident.size()
      << " confident, " << partition.ambiguous.size() << " ambiguous, "
      << partition.hard.size() << " hard -> " << inputs.out_dir.string() << '\n';
}

}  // namespace stad
