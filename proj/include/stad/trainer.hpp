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

// Mini-batch gradient-descent training for the linear classifier, plus the
// tagged training-instance type shared with the self-training pipeline.

#ifndef STAD_TRAINER_HPP_
#define STAD_TRAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "stad/corpus.hpp"
#include "stad/model.hpp"
#include "stad/random.hpp"

namespace stad {

enum class TagMode {
  kHuman,    // one-hot gold
  kHard,     // one-hot teacher argmax
  kSoft,     // teacher distribution
  kPartial,  // multi-hot over C+, set-negative training on C-
  // Ablations of the partial mode.
  kHardNegative,     // argmax tagged, set-negative training on the complement
  kPartialPositive,  // C+ tagged, positive training averaged over C+
};

std::string_view to_string(TagMode mode);

// `label.y` holds the tag (one-hot, fractional or multi-hot). For z = 1 modes
// the per-step one-hot negative label is drawn from `negative_set`.
struct TaggedInstance {
  Eigen::VectorXd features;
  Label label;
  TagMode mode = TagMode::kHuman;
  std::vector<RelationId> negative_set;
};

struct LabeledFeatures {
  Eigen::MatrixXd features;  // one row per instance
  std::vector<RelationId> gold;

  bool empty() const { return gold.empty(); }
};

struct TrainConfig {
  double learning_rate = 40.0;
  int batch_size = 16;
  int max_epochs = 20;
  int patience = 5;
  double l2 = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

// Draws a negative label for an instance with z = 1.
using NegativeSampler = std::function<RelationId(const TaggedInstance&, Rng&)>;

struct TrainResult {
  Model model;
  int best_epoch = 0;  // 0 when no epoch ran
  int epochs_run = 0;
  double best_dev_f1 = 0;
};

// Shuffled mini-batch gradient descent on the unified loss. Every optimizer
// step draws a fresh negative label for each z = 1 instance in the batch.
// Returns the parameters of the epoch with the best dev micro-F1 (earliest on
// ties) and stops after `patience` epochs without improvement. With an empty
// dev set the last epoch's parameters are returned.
TrainResult train(const Model& init, std::span<const TaggedInstance> data,
                  const LabeledFeatures& dev, const RelationSchema& schema,
                  const TrainConfig& config, const NegativeSampler& sampler);

double dev_micro_f1(const Model& model, const LabeledFeatures& dev,
                    const RelationSchema& schema);

// --- Checkpoints --------------------------------------------------------------
//
// Text format:
//   stad-checkpoint 1
//   schema <16 hex digits>
//   features <16 hex digits>
//   dims <M> <D>
//   <M lines of D values: W row-major>
//   <1 line of M values: b>
// Values use 17 significant digits and round-trip exactly.

struct Checkpoint {
  Model model;
  std::uint64_t schema_fingerprint = 0;
  std::uint64_t feature_fingerprint = 0;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace stad

#endif  // STAD_TRAINER_HPP_
