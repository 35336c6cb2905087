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

// Hashed n-gram encoder. Stands in for a contextual encoder: the contract is
// MarkedSentence -> fixed-width vector with a head block and a tail block.

#ifndef STAD_ENCODER_HPP_
#define STAD_ENCODER_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "stad/corpus.hpp"

namespace stad {

struct FeatureConfig {
  int dim_per_entity = 512;
  std::set<int> ngram_orders = {1, 2};
  int window = 3;
  std::uint64_t hash_seed = 0;

  // Throws ConfigError on invalid values.
  void validate() const;
  std::uint64_t fingerprint() const;
  int width() const { return 2 * dim_per_entity; }

  bool operator==(const FeatureConfig&) const = default;
};

// Each entity block hashes, with +/-1 signs, the n-grams of
//   - up to `window` tokens before its opening marker,
//   - the entity tokens,
//   - up to `window` tokens after its closing marker,
//   - the tokens between the two entities (tagged with their order).
// Nonzero blocks are L2-normalized; the head block comes first.
Eigen::VectorXd featurize(const MarkedSentence& sentence,
                          const FeatureConfig& config);

// Row i is featurize(insert_entity_markers(data[i])).
Eigen::MatrixXd featurize_all(const std::vector<RelationInstance>& data,
                              const FeatureConfig& config);

}  // namespace stad

#endif  // STAD_ENCODER_HPP_
