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

// Experiment configuration file.

#ifndef STAD_CONFIG_HPP_
#define STAD_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "stad/encoder.hpp"
#include "stad/selftrain.hpp"
#include "stad/trainer.hpp"

namespace stad {

struct DataPaths {
  std::filesystem::path dataset;
  std::filesystem::path schema;
  std::filesystem::path splits;  // written by `prepare`, read by `run`

  bool operator==(const DataPaths&) const = default;
};

struct SweepConfig {
  std::vector<std::string> systems = {"Self-Training", "Hard-Label", "STAD"};
  std::vector<double> thresholds = {0.95, 0.90, 0.85, 0.80};
  std::vector<int> fixed_n = {2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> k_train = {20, 15, 10, 5};

  bool operator==(const SweepConfig&) const = default;
};

struct ExperimentConfig {
  std::string name = "experiment";  // dataset label in comparison tables
  DataPaths data;
  std::filesystem::path output_dir = "out";
  std::vector<std::string> systems = {"STAD"};
  FeatureConfig features;
  TrainConfig train;
  PartitionConfig partition;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  int k_train = 20;
  int k_dev = 10;
  std::uint64_t split_seed = 13;
  bool exclude_negative = true;
  SweepConfig sweep;

  // Checks everything that does not need the schema; throws ConfigError.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::ordered_json to_json(const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ExperimentConfig& config);

}  // namespace stad

#endif  // STAD_CONFIG_HPP_
