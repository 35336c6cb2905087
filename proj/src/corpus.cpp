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

#include "stad/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "stad/errors.hpp"
#include "stad/hash.hpp"
#include "stad/random.hpp"

namespace stad {

using nlohmann::json;
using nlohmann::ordered_json;

RelationSchema::RelationSchema(std::vector<std::string> relations,
                               std::optional<std::string> negative_relation)
    : relations_(std::move(relations)),
      negative_name_(std::move(negative_relation)) {
  if (relations_.size() < 2) {
    throw DataError("schema needs at least two relations");
  }
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (r.empty()) throw DataError("schema contains an empty relation name");
    if (!seen.insert(r).second) {
      throw DataError("schema contains duplicate relation '" + r + "'");
    }
  }
  if (negative_name_) {
    negative_ = find(*negative_name_);
    if (!negative_) {
      throw DataError("negative relation '" + *negative_name_ +
                      "' is not in the schema");
    }
  }
}

std::optional<RelationId> RelationSchema::find(std::string_view name) const {
  auto it = std::find(relations_.begin(), relations_.end(), name);
  if (it == relations_.end()) return std::nullopt;
  return static_cast<RelationId>(it - relations_.begin());
}

std::uint64_t RelationSchema::fingerprint() const {
  Fnv1a h(relations_.size());
  for (const auto& r : relations_) h.mix(r).mix_u64(0);
  h.mix(negative_name_.value_or("")).mix_u64(negative_name_ ? 1 : 0);
  return h.digest();
}

std::string validate_spans(const RelationInstance& instance) {
  const auto n = instance.tokens.size();
  auto check = [n](const Span& s, const char* which) -> std::string {
    if (s.begin >= s.end) return std::string(which) + " span is empty";
    if (s.end > n) return std::string(which) + " span exceeds token count";
    return {};
  };
  if (auto e = check(instance.head, "head"); !e.empty()) return e;
  if (auto e = check(instance.tail, "tail"); !e.empty()) return e;
  const auto& h = instance.head;
  const auto& t = instance.tail;
  if (h.begin < t.end && t.begin < h.end) return "head and tail spans overlap";
  return {};
}

MarkedSentence insert_entity_markers(const RelationInstance& instance) {
  const auto& h = instance.head;
  const auto& t = instance.tail;
  MarkedSentence out;
  out.tokens.reserve(instance.tokens.size() + 4);
  auto push = [&out](std::string_view tok) { out.tokens.emplace_back(tok); };
  for (std::size_t i = 0; i <= instance.tokens.size(); ++i) {
    // Closing markers first so adjacent spans stay well nested.
    if (i == h.end) {
      out.e1_end_pos = out.tokens.size();
      push(kHeadClose);
    }
    if (i == t.end) {
      out.e2_end_pos = out.tokens.size();
      push(kTailClose);
    }
    if (i == h.begin) {
      out.e1_start_pos = out.tokens.size();
      push(kHeadOpen);
    }
    if (i == t.begin) {
      out.e2_start_pos = out.tokens.size();
      push(kTailOpen);
    }
    if (i < instance.tokens.size()) push(instance.tokens[i]);
  }
  return out;
}

std::vector<std::string> strip_entity_markers(const MarkedSentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i == sentence.e1_start_pos || i == sentence.e1_end_pos ||
        i == sentence.e2_start_pos || i == sentence.e2_end_pos) {
      continue;
    }
    out.push_back(sentence.tokens[i]);
  }
  return out;
}

SplitBundle sample_low_resource(const std::vector<RelationInstance>& data,
                                const RelationSchema& schema,
                                const SamplingOptions& options) {
  if (options.k_train < 1 || options.k_dev < 1) {
    throw ConfigError("k_train and k_dev must be at least 1");
  }
  const int m = schema.size();
  auto excluded = [&](const RelationInstance& x) {
    return options.exclude_negative && schema.negative() && x.gold &&
           *x.gold == *schema.negative();
  };

  std::vector<std::vector<std::size_t>> train_pool(m), dev_pool(m);
  bool have_dev_pool = false;
  SplitBundle bundle;
  std::vector<std::size_t> gold_less;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& x = data[i];
    if (excluded(x)) continue;
    switch (x.split) {
      case SplitTag::kTrain:
        if (x.gold) {
          train_pool[*x.gold].push_back(i);
        } else {
          gold_less.push_back(i);
        }
        break;
      case SplitTag::kDev:
        if (!x.gold) throw DataError("dev record '" + x.id + "' has no relation");
        dev_pool[*x.gold].push_back(i);
        have_dev_pool = true;
        break;
      case SplitTag::kTest:
        if (!x.gold) throw DataError("test record '" + x.id + "' has no relation");
        bundle.test.push_back(x);
        break;
    }
  }

  std::vector<bool> used(data.size(), false);
  for (RelationId r = 0; r < m; ++r) {
    if (options.exclude_negative && schema.negative() == r) continue;
    auto pool = train_pool[r];
    if (pool.empty()) {
      throw DataError("relation '" + schema.name(r) +
                      "' has no instances in the training pool");
    }
    Rng rng = derive_stream(options.seed, stream::kSplit, 2 * r);
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto take = std::min<std::size_t>(pool.size(), options.k_train);
    for (int j = 0; j < options.k_train; ++j) {
      bundle.train.push_back(data[pool[j % take]]);
    }
    for (std::size_t j = 0; j < take; ++j) used[pool[j]] = true;

    if (have_dev_pool) {
      auto dpool = dev_pool[r];
      Rng drng = derive_stream(options.seed, stream::kSplit, 2 * r + 1);
      std::shuffle(dpool.begin(), dpool.end(), drng);
      const auto dtake = std::min<std::size_t>(dpool.size(), options.k_dev);
      for (std::size_t j = 0; j < dtake; ++j) bundle.dev.push_back(data[dpool[j]]);
    } else {
      const auto dtake = std::min<std::size_t>(pool.size() - take, options.k_dev);
      for (std::size_t j = take; j < take + dtake; ++j) {
        bundle.dev.push_back(data[pool[j]]);
        used[pool[j]] = true;
      }
    }
  }

  // Unlabeled keeps file order.
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& x = data[i];
    if (x.split != SplitTag::kTrain || excluded(x) || used[i]) continue;
    bundle.unlabeled.push_back(x);
  }
  return bundle;
}

namespace {

const char* split_name(SplitTag s) {
  switch (s) {
    case SplitTag::kTrain: return "train";
    case SplitTag::kDev: return "dev";
    case SplitTag::kTest: return "test";
  }
  return "train";
}

Span parse_span(const json& j, const char* which, std::size_t line) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned()) {
    throw DataError(std::string(which) + " must be [begin, end]", line);
  }
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

}  // namespace

std::vector<RelationInstance> read_dataset(std::istream& in,
                                           const RelationSchema& schema,
                                           std::vector<std::string>* warnings) {
  static const std::set<std::string> kKnown = {"id",   "tokens",   "head",
                                               "tail", "relation", "split"};
  std::vector<RelationInstance> out;
  std::unordered_set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed record: ") + e.what(), line);
    }
    if (!j.is_object()) throw DataError("record is not an object", line);
    for (const auto& [key, _] : j.items()) {
      if (!kKnown.count(key) && warnings) {
        warnings->push_back("line " + std::to_string(line) +
                            ": ignoring unknown field '" + key + "'");
      }
    }
    RelationInstance x;
    try {
      x.id = j.at("id").get<std::string>();
      x.tokens = j.at("tokens").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw DataError(std::string("missing or invalid id/tokens: ") + e.what(),
                      line);
    }
    if (!j.contains("head") || !j.contains("tail")) {
      throw DataError("record needs head and tail spans", line);
    }
    x.head = parse_span(j["head"], "head", line);
    x.tail = parse_span(j["tail"], "tail", line);
    if (auto err = validate_spans(x); !err.empty()) {
      throw DataError("invalid span: " + err, line);
    }
    if (j.contains("relation") && !j["relation"].is_null()) {
      if (!j["relation"].is_string()) {
        throw DataError("relation must be a string", line);
      }
      const auto name = j["relation"].get<std::string>();
      x.gold = schema.find(name);
      if (!x.gold) throw DataError("unknown relation '" + name + "'", line);
    }
    if (j.contains("split")) {
      const auto s = j["split"].is_string() ? j["split"].get<std::string>() : "";
      if (s == "train") {
        x.split = SplitTag::kTrain;
      } else if (s == "dev") {
        x.split = SplitTag::kDev;
      } else if (s == "test") {
        x.split = SplitTag::kTest;
      } else {
        throw DataError("split must be one of train, dev, test", line);
      }
    }
    if (!ids.insert(x.id).second) {
      throw DataError("duplicate id '" + x.id + "'", line);
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<RelationInstance> load_dataset(const std::filesystem::path& path,
                                           const RelationSchema& schema,
                                           std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return read_dataset(in, schema, warnings);
}

void write_dataset(std::ostream& out, const std::vector<RelationInstance>& data,
                   const RelationSchema& schema) {
  for (const auto& x : data) {
    ordered_json j;
    j["id"] = x.id;
    j["tokens"] = x.tokens;
    j["head"] = {x.head.begin, x.head.end};
    j["tail"] = {x.tail.begin, x.tail.end};
    if (x.gold) j["relation"] = schema.name(*x.gold);
    j["split"] = split_name(x.split);
    out << j.dump() << '\n';
  }
}

void save_dataset(const std::filesystem::path& path,
                  const std::vector<RelationInstance>& data,
                  const RelationSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_dataset(out, data, schema);
}

RelationSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file " + path.string());
  json j;
  try {
    j = json::parse(in);
    std::optional<std::string> negative;
    if (j.contains("negative_relation") && !j["negative_relation"].is_null()) {
      negative = j["negative_relation"].get<std::string>();
    }
    return RelationSchema(j.at("relations").get<std::vector<std::string>>(),
                          std::move(negative));
  } catch (const json::exception& e) {
    throw DataError("invalid schema file " + path.string() + ": " + e.what());
  }
}

void save_schema(const std::filesystem::path& path, const RelationSchema& schema) {
  ordered_json j;
  j["relations"] = schema.relations();
  if (schema.negative_name()) {
    j["negative_relation"] = *schema.negative_name();
  } else {
    j["negative_relation"] = nullptr;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace stad
