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

// Synthetic relation corpus with confusable relation pairs.
//
// Every relation owns a pool of cue phrases; each confusable pair also shares
// a pool. Instances of a confusable relation sometimes use shared phrases only,
// which makes them genuinely ambiguous between the two relations of the pair.

#ifndef STAD_SYNTH_HPP_
#define STAD_SYNTH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "stad/corpus.hpp"

namespace stad {

struct SynthParams {
  int relations = 10;
  int confusable_pairs = 3;
  bool overlapping_pairs = true;    // pairs form a cycle instead of being disjoint
  int templates_per_relation = 8;   // cue phrases per relation and per pair
  int phrase_length = 3;            // tokens per cue phrase
  int instances_per_relation = 200;
  int filler_vocab = 30;
  int context_fillers = 3;          // max filler tokens before and after the entities
  int entity_vocab = 3000;
  double noise_rate = 0.1;          // chance a cue word is replaced by filler
  double shared_rate = 0.4;         // chance a paired instance uses shared cues only
  double test_fraction = 0.25;
  std::uint64_t seed = 7;

  void validate() const;  // throws ConfigError
  bool operator==(const SynthParams&) const = default;
};

struct SynthCorpus {
  RelationSchema schema;
  std::vector<RelationInstance> instances;
  // Overlapping pairs link k and k+1 around a cycle; disjoint pairs are
  // (2k, 2k+1).
  std::vector<std::pair<RelationId, RelationId>> confusable_pairs;
};

SynthCorpus generate_synthetic(const SynthParams& params);

}  // namespace stad

#endif  // STAD_SYNTH_HPP_
