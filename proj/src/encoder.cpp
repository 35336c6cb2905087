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

#include "stad/encoder.hpp"

#include <algorithm>
#include <string>
#include <string_view>

#include "stad/errors.hpp"
#include "stad/hash.hpp"

namespace stad {

void FeatureConfig::validate() const {
  if (dim_per_entity < 1) throw ConfigError("dim_per_entity must be >= 1");
  if (ngram_orders.empty()) throw ConfigError("ngram_orders must not be empty");
  if (*ngram_orders.begin() < 1) throw ConfigError("n-gram orders must be >= 1");
  if (window < 0) throw ConfigError("window must be >= 0");
}

std::uint64_t FeatureConfig::fingerprint() const {
  Fnv1a h(hash_seed);
  h.mix_u64(static_cast<std::uint64_t>(dim_per_entity))
      .mix_u64(static_cast<std::uint64_t>(window));
  for (int n : ngram_orders) h.mix_u64(static_cast<std::uint64_t>(n));
  return h.digest();
}

namespace {

using TokenRange = std::pair<std::size_t, std::size_t>;  // [first, last)

void hash_region(const std::vector<std::string>& tokens, TokenRange range,
                 std::string_view ns, const FeatureConfig& config,
                 Eigen::Ref<Eigen::VectorXd> block) {
  const auto [first, last] = range;
  const auto dim = static_cast<std::uint64_t>(config.dim_per_entity);
  for (int n : config.ngram_orders) {
    const auto order = static_cast<std::size_t>(n);
    if (last < first + order) continue;
    for (std::size_t i = first; i + order <= last; ++i) {
      Fnv1a h(config.hash_seed);
      h.mix(ns).mix_u64(order);
      for (std::size_t k = i; k < i + order; ++k) h.mix(tokens[k]).mix_u64(0);
      const auto d = h.digest();
      const double sign = (d >> 63) ? -1.0 : 1.0;
      block[static_cast<Eigen::Index>(d % dim)] += sign;
    }
  }
}

void encode_entity(const MarkedSentence& s, std::size_t open, std::size_t close,
                   TokenRange between, std::string_view between_ns,
                   const FeatureConfig& config, Eigen::Ref<Eigen::VectorXd> block) {
  const auto w = static_cast<std::size_t>(config.window);
  const auto n = s.tokens.size();
  hash_region(s.tokens, {open >= w ? open - w : 0, open}, "L", config, block);
  hash_region(s.tokens, {open + 1, close}, "E", config, block);
  hash_region(s.tokens, {close + 1, std::min(n, close + 1 + w)}, "R", config,
              block);
  hash_region(s.tokens, between, between_ns, config, block);
  const double norm = block.norm();
  if (norm > 0.0) block /= norm;
}

}  // namespace

Eigen::VectorXd featurize(const MarkedSentence& sentence,
                          const FeatureConfig& config) {
  const bool head_first = sentence.e1_start_pos < sentence.e2_start_pos;
  const TokenRange between =
      head_first ? TokenRange{sentence.e1_end_pos + 1, sentence.e2_start_pos}
                 : TokenRange{sentence.e2_end_pos + 1, sentence.e1_start_pos};
  const std::string_view between_ns = head_first ? "M>" : "M<";

  Eigen::VectorXd h = Eigen::VectorXd::Zero(config.width());
  const Eigen::Index d = config.dim_per_entity;
  encode_entity(sentence, sentence.e1_start_pos, sentence.e1_end_pos, between,
                between_ns, config, h.head(d));
  encode_entity(sentence, sentence.e2_start_pos, sentence.e2_end_pos, between,
                between_ns, config, h.tail(d));
  return h;
}

Eigen::MatrixXd featurize_all(const std::vector<RelationInstance>& data,
                              const FeatureConfig& config) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(data.size()), config.width());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) =
        featurize(insert_entity_markers(data[i]), config).transpose();
  }
  return out;
}

}  // namespace stad
