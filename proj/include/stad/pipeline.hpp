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

// End-to-end self-training runs: teacher, annotation, partition, student.

#ifndef STAD_PIPELINE_HPP_
#define STAD_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stad/analysis.hpp"
#include "stad/corpus.hpp"
#include "stad/encoder.hpp"
#include "stad/selftrain.hpp"
#include "stad/trainer.hpp"

namespace stad {

enum class System { kSupervised, kSelfTraining, kHardLabel, kSoftLabel, kStad };

inline constexpr std::array<System, 5> kAllSystems = {
    System::kSupervised, System::kSelfTraining, System::kHardLabel,
    System::kSoftLabel, System::kStad};

std::string_view to_string(System system);
// Throws ConfigError naming the valid identities.
System parse_system(std::string_view name);

// Which auto-annotated data the student sees and how it is tagged.
struct Recipe {
  std::string name;
  bool annotate = true;  // false: the student is the teacher
  bool use_confident = true;
  std::optional<TagMode> ambiguous_mode;  // nullopt: ambiguous data unused
};

Recipe recipe_for(System system);

struct PreparedData {
  RelationSchema schema;
  FeatureConfig features;
  LabeledFeatures train;
  LabeledFeatures dev;
  LabeledFeatures test;
  std::vector<RelationInstance> unlabeled;
  Eigen::MatrixXd unlabeled_features;

  static PreparedData from_bundle(const SplitBundle& bundle, const RelationSchema& schema,
                                  const FeatureConfig& features);
};

enum class EvalSplit { kDev, kTest };

struct PipelineOptions {
  TrainConfig train;  // `seed` is replaced by per-seed, per-stage streams
  PartitionConfig partition;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  EvalSplit eval_split = EvalSplit::kTest;
};

// Teachers depend only on the human data, the training config and the seed,
// so runs over the same prepared data may share them.
struct TeacherCache {
  std::map<std::uint64_t, TrainResult> by_seed;
};

struct SeedArtifacts {
  Model teacher;
  Model student;
  Eigen::MatrixXd teacher_probs;  // rows follow PreparedData::unlabeled
  std::optional<Partition> partition;
};

std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t stage);

std::vector<TaggedInstance> assemble_training_set(const PreparedData& data,
                                                  const Recipe& recipe,
                                                  const Eigen::MatrixXd& teacher_probs,
                                                  const Partition& partition);

SeedRun run_seed(const PreparedData& data, const Recipe& recipe,
                 const PipelineOptions& options, std::uint64_t seed,
                 TeacherCache* cache = nullptr, SeedArtifacts* artifacts = nullptr);

ExperimentResult run_pipeline(const PreparedData& data, const Recipe& recipe,
                              const PipelineOptions& options,
                              TeacherCache* cache = nullptr,
                              std::vector<SeedArtifacts>* artifacts = nullptr);

}  // namespace stad

#endif  // STAD_PIPELINE_HPP_
