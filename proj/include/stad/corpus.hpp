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

// Relation-extraction datasets: schema, instances, entity markers and
// low-resource splits.

#ifndef STAD_CORPUS_HPP_
#define STAD_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stad {

using RelationId = int;

class RelationSchema {
 public:
  RelationSchema() = default;
  // Throws DataError if names are empty, duplicated, fewer than two, or the
  // negative relation is not among them.
  RelationSchema(std::vector<std::string> relations,
                 std::optional<std::string> negative_relation = std::nullopt);

  int size() const { return static_cast<int>(relations_.size()); }
  const std::vector<std::string>& relations() const { return relations_; }
  const std::string& name(RelationId id) const { return relations_.at(id); }
  std::optional<RelationId> find(std::string_view name) const;
  std::optional<RelationId> negative() const { return negative_; }
  const std::optional<std::string>& negative_name() const {
    return negative_name_;
  }

  // Stable content hash, stored in checkpoints.
  std::uint64_t fingerprint() const;

  bool operator==(const RelationSchema&) const = default;

 private:
  std::vector<std::string> relations_;
  std::optional<std::string> negative_name_;
  std::optional<RelationId> negative_;
};

// Half-open token range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

enum class SplitTag { kTrain, kDev, kTest };

struct RelationInstance {
  std::string id;
  std::vector<std::string> tokens;
  Span head;
  Span tail;
  std::optional<RelationId> gold;
  // Which pool of the original corpus the record came from.
  SplitTag split = SplitTag::kTrain;

  bool operator==(const RelationInstance&) const = default;
};

// Returns an empty string when the spans are valid, else a description.
std::string validate_spans(const RelationInstance& instance);

inline constexpr std::string_view kHeadOpen = "[E1]";
inline constexpr std::string_view kHeadClose = "[/E1]";
inline constexpr std::string_view kTailOpen = "[E2]";
inline constexpr std::string_view kTailClose = "[/E2]";

struct MarkedSentence {
  std::vector<std::string> tokens;
  std::size_t e1_start_pos = 0;
  std::size_t e1_end_pos = 0;  // index of [/E1]
  std::size_t e2_start_pos = 0;
  std::size_t e2_end_pos = 0;  // index of [/E2]
};

MarkedSentence insert_entity_markers(const RelationInstance& instance);

// Inverse of insert_entity_markers on the token list.
std::vector<std::string> strip_entity_markers(const MarkedSentence& sentence);

struct SplitBundle {
  std::vector<RelationInstance> train;
  std::vector<RelationInstance> dev;
  std::vector<RelationInstance> test;
  // Gold labels are kept for diagnostics only; training never reads them.
  std::vector<RelationInstance> unlabeled;
};

struct SamplingOptions {
  int k_train = 20;
  int k_dev = 10;
  std::uint64_t seed = 0;
  // Drop instances of the schema's negative relation before splitting.
  bool exclude_negative = true;
};

// Per relation: k_train training instances (cycled when fewer exist), up to
// k_dev dev instances from the dev pool (or, if the corpus has no dev pool,
// from the remaining training pool), the rest of the training pool as
// unlabeled data. Test records pass through unchanged.
SplitBundle sample_low_resource(const std::vector<RelationInstance>& data,
                                const RelationSchema& schema,
                                const SamplingOptions& options);

// --- File formats -----------------------------------------------------------
//
// Dataset: one JSON object per line,
//   {"id": "...", "tokens": [...], "head": [b, e], "tail": [b, e],
//    "relation": "name", "split": "train" | "dev" | "test"}
// "relation" and "split" are optional. Unknown fields produce a warning.
//
// Schema: {"relations": ["r0", "r1", ...], "negative_relation": "Other"}

std::vector<RelationInstance> read_dataset(std::istream& in,
                                           const RelationSchema& schema,
                                           std::vector<std::string>* warnings = nullptr);
std::vector<RelationInstance> load_dataset(const std::filesystem::path& path,
                                           const RelationSchema& schema,
                                           std::vector<std::string>* warnings = nullptr);
void write_dataset(std::ostream& out, const std::vector<RelationInstance>& data,
                   const RelationSchema& schema);
void save_dataset(const std::filesystem::path& path,
                  const std::vector<RelationInstance>& data,
                  const RelationSchema& schema);

RelationSchema load_schema(const std::filesystem::path& path);
void save_schema(const std::filesystem::path& path, const RelationSchema& schema);

}  // namespace stad

#endif  // STAD_CORPUS_HPP_
