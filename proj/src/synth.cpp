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

#include "stad/synth.hpp"

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "stad/errors.hpp"
#include "stad/random.hpp"

namespace stad {

namespace {

constexpr std::array<const char*, 8> kConnectors = {"of", "from", "in", "by",
                                                    "at", "with", "for", "to"};

std::string word(const char* prefix, int a, int b = -1) {
  char buf[32];
  if (b < 0) {
    std::snprintf(buf, sizeof buf, "%s%d", prefix, a);
  } else {
    std::snprintf(buf, sizeof buf, "%s%d_%d", prefix, a, b);
  }
  return buf;
}

}  // namespace

void SynthParams::validate() const {
  if (relations < 2) throw ConfigError("synthetic corpus needs at least two relations");
  if (confusable_pairs < 0 || (!overlapping_pairs && 2 * confusable_pairs > relations) ||
      (overlapping_pairs && confusable_pairs >= relations)) {
    throw ConfigError("too many confusable_pairs for the relation count");
  }
  if (templates_per_relation < 1) throw ConfigError("templates_per_relation must be >= 1");
  if (phrase_length < 1 || phrase_length > 26) throw ConfigError("phrase_length must lie in [1, 26]");
  if (instances_per_relation < 1) throw ConfigError("instances_per_relation must be >= 1");
  if (context_fillers < 0) throw ConfigError("context_fillers must be >= 0");
  if (filler_vocab < 1 || entity_vocab < 1) throw ConfigError("vocabulary sizes must be >= 1");
  auto rate = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  rate(noise_rate, "noise_rate");
  rate(shared_rate, "shared_rate");
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in [0, 1)");
  }
}

SynthCorpus generate_synthetic(const SynthParams& params) {
  params.validate();
  std::vector<std::string> names;
  for (int r = 0; r < params.relations; ++r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "R%02d", r);
    names.emplace_back(buf);
  }
  SynthCorpus out{RelationSchema(names), {}, {}};
  const int cycle = params.confusable_pairs >= 3 ? params.confusable_pairs
                                                 : params.confusable_pairs + 1;
  for (int k = 0; k < params.confusable_pairs; ++k) {
    if (params.overlapping_pairs) {
      out.confusable_pairs.emplace_back(k, (k + 1) % cycle);
    } else {
      out.confusable_pairs.emplace_back(2 * k, 2 * k + 1);
    }
  }

  Rng rng = derive_stream(params.seed, stream::kSynth);
  auto uniform = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto chance = [&rng](double p) { return std::uniform_real_distribution<double>()(rng) < p; };

  auto filler = [&] { return word("f", uniform(params.filler_vocab)); };
  auto entity = [&](std::vector<std::string>& tokens) {
    const auto begin = tokens.size();
    const int len = 1 + uniform(2);
    for (int i = 0; i < len; ++i) tokens.push_back(word("e", uniform(params.entity_vocab)));
    return Span{begin, tokens.size()};
  };
  auto phrase = [&](std::vector<std::string>& tokens, const char* pool, int owner) {
    const std::string cue = word(pool, owner, uniform(params.templates_per_relation));
    for (int t = 0; t < params.phrase_length; ++t) {
      tokens.push_back(chance(params.noise_rate) ? filler()
                                                 : cue + static_cast<char>('a' + t));
    }
    tokens.emplace_back(kConnectors[uniform(static_cast<int>(kConnectors.size()))]);
  };

  // pairs each relation belongs to
  std::vector<std::vector<int>> member_of(static_cast<std::size_t>(params.relations));
  for (int k = 0; k < static_cast<int>(out.confusable_pairs.size()); ++k) {
    member_of[out.confusable_pairs[k].first].push_back(k);
    member_of[out.confusable_pairs[k].second].push_back(k);
  }

  const int test_count = static_cast<int>(params.test_fraction * params.instances_per_relation);
  for (int r = 0; r < params.relations; ++r) {
    const auto& pairs = member_of[r];
    for (int i = 0; i < params.instances_per_relation; ++i) {
      RelationInstance x;
      x.id = word("syn", r, i);
      x.gold = r;
      x.split = i >= params.instances_per_relation - test_count ? SplitTag::kTest
                                                                : SplitTag::kTrain;
      for (int n = uniform(params.context_fillers + 1); n > 0; --n) x.tokens.push_back(filler());
      x.head = entity(x.tokens);
      if (pairs.empty()) {
        phrase(x.tokens, "c", r);
        if (chance(0.5)) x.tokens.push_back(filler());
        phrase(x.tokens, "c", r);
      } else {
        const int pair = pairs[static_cast<std::size_t>(uniform(static_cast<int>(pairs.size())))];
        if (chance(params.shared_rate)) {
          phrase(x.tokens, "s", pair);
          if (chance(0.5)) x.tokens.push_back(filler());
          phrase(x.tokens, "s", pair);
        } else {
          // half own + own, half one own and one shared phrase in either order
          const bool mixed = chance(0.5);
          const bool own_first = chance(0.5);
          if (mixed && !own_first) {
            phrase(x.tokens, "s", pair);
          } else {
            phrase(x.tokens, "c", r);
          }
          if (chance(0.5)) x.tokens.push_back(filler());
          if (mixed && own_first) {
            phrase(x.tokens, "s", pair);
          } else {
            phrase(x.tokens, "c", r);
          }
        }
      }
      x.tail = entity(x.tokens);
      for (int n = uniform(params.context_fillers + 1); n > 0; --n) x.tokens.push_back(filler());
      out.instances.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace stad
