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

// Self-training with ambiguous data: teacher annotation, probability
// accumulation partitioning, tagging modes and negative-label sampling.

#ifndef STAD_SELFTRAIN_HPP_
#define STAD_SELFTRAIN_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stad/corpus.hpp"
#include "stad/encoder.hpp"
#include "stad/model.hpp"
#include "stad/random.hpp"
#include "stad/trainer.hpp"

namespace stad {

enum class PartitionMode { kDynamic, kFixedN };

// What fixed-N mode does with an instance whose dynamic candidate set is
// larger than N.
enum class FixedNOverflow {
  kTruncate,  // keep it, candidates = top-N
  kExclude,   // drop it into the hard set
};

struct PartitionConfig {
  double threshold = 0.95;
  PartitionMode mode = PartitionMode::kDynamic;
  std::optional<int> fixed_n;
  FixedNOverflow overflow = FixedNOverflow::kTruncate;

  // Throws ConfigError. `num_relations` bounds fixed_n to [2, M-1].
  void validate(int num_relations) const;
  bool operator==(const PartitionConfig&) const = default;
};

struct AutoAnnotatedInstance {
  RelationInstance instance;
  Eigen::VectorXd p;
};

// Members refer to instances by their position in the annotated input.
struct ConfidentInstance {
  std::size_t index = 0;
  RelationId label = 0;
};

struct AmbiguousInstance {
  std::size_t index = 0;
  std::vector<RelationId> candidates;  // C+, descending teacher probability
  std::vector<RelationId> negatives;   // C-, ascending id
};

struct Partition {
  std::vector<ConfidentInstance> confident;
  std::vector<AmbiguousInstance> ambiguous;
  std::vector<std::size_t> hard;

  std::size_t size() const {
    return confident.size() + ambiguous.size() + hard.size();
  }
};

Eigen::MatrixXd annotate(const Model& teacher, const Eigen::MatrixXd& features);
std::vector<AutoAnnotatedInstance> annotate(const Model& teacher,
                                            const std::vector<RelationInstance>& unlabeled,
                                            const FeatureConfig& features);

// Shortest descending-probability prefix whose sum exceeds `threshold`.
// The whole ranking is returned when no proper prefix does.
std::vector<RelationId> accumulate_candidates(const Eigen::Ref<const Eigen::VectorXd>& p,
                                              double threshold);

// Dispatches on cfg.mode. Rows of `probs` are teacher distributions.
Partition partition(const Eigen::MatrixXd& probs, const PartitionConfig& cfg);
Partition partition(std::span<const AutoAnnotatedInstance> annotated,
                    const PartitionConfig& cfg);
Partition partition_dynamic(const Eigen::MatrixXd& probs, double threshold);
Partition partition_fixed_n(const Eigen::MatrixXd& probs, const PartitionConfig& cfg);

// Complement of `candidates` in [0, M), ascending.
std::vector<RelationId> complement(std::span<const RelationId> candidates, int num_relations);

TaggedInstance tag_human(Eigen::VectorXd features, RelationId gold, int num_relations);

// Tags an auto-annotated instance with teacher distribution `p`:
//   kHard             one-hot argmax p, z = 0
//   kSoft             y = p, z = 0
//   kPartial          multi-hot over C+, z = 1, negatives = C-
//   kHardNegative     one-hot argmax p, z = 1, negatives = all but argmax
//   kPartialPositive  multi-hot over C+ divided by |C+|, z = 0
// Partial modes need the ambiguous member's candidates and throw
// std::invalid_argument without them.
TaggedInstance tag(Eigen::VectorXd features, const Eigen::VectorXd& p, TagMode mode,
                   std::span<const RelationId> candidates = {});

// Uniform draw from item.negative_set. Throws std::invalid_argument when empty.
RelationId draw_negative(const TaggedInstance& item, Rng& rng);
Label sample_negative_label(const TaggedInstance& item, Rng& rng);

// --- Partition dump -----------------------------------------------------------
//
// One JSON object per annotated instance, in input order:
//   {"id": ..., "gold": name|null, "set": "confident"|"ambiguous"|"hard",
//    "ranked": [[name, p], ...], "candidates": [name, ...]}

struct DumpEntry {
  std::string id;
  std::optional<RelationId> gold;
  std::string set;
  std::vector<std::pair<RelationId, double>> ranked;
  std::vector<RelationId> candidates;
};

void write_partition_dump(std::ostream& out, const Partition& partition,
                          const std::vector<RelationInstance>& instances,
                          const Eigen::MatrixXd& probs, const RelationSchema& schema);
std::vector<DumpEntry> read_partition_dump(std::istream& in, const RelationSchema& schema);
std::vector<DumpEntry> load_partition_dump(const std::filesystem::path& path,
                                           const RelationSchema& schema);
// Rebuilds the partition (indices are dump positions).
Partition partition_from_dump(const std::vector<DumpEntry>& entries, int num_relations);

}  // namespace stad

#endif  // STAD_SELFTRAIN_HPP_
