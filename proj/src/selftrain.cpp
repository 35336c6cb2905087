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

#include "stad/selftrain.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "stad/errors.hpp"
#include "stad/metrics.hpp"

namespace stad {

using nlohmann::json;
using nlohmann::ordered_json;

void PartitionConfig::validate(int num_relations) const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("threshold must lie in (0, 1)");
  }
  if (mode == PartitionMode::kFixedN) {
    if (!fixed_n) throw ConfigError("fixed_n mode requires fixed_n");
    if (*fixed_n < 2 || *fixed_n > num_relations - 1) {
      throw ConfigError("fixed_n must lie in [2, M-1] = [2, " +
                        std::to_string(num_relations - 1) + "]");
    }
  }
}

Eigen::MatrixXd annotate(const Model& teacher, const Eigen::MatrixXd& features) {
  return predict_proba_rows(teacher, features);
}

std::vector<AutoAnnotatedInstance> annotate(const Model& teacher,
                                            const std::vector<RelationInstance>& unlabeled,
                                            const FeatureConfig& features) {
  const Eigen::MatrixXd probs = annotate(teacher, featurize_all(unlabeled, features));
  std::vector<AutoAnnotatedInstance> out;
  out.reserve(unlabeled.size());
  for (std::size_t i = 0; i < unlabeled.size(); ++i) {
    out.push_back({unlabeled[i], probs.row(static_cast<Eigen::Index>(i)).transpose()});
  }
  return out;
}

std::vector<RelationId> accumulate_candidates(const Eigen::Ref<const Eigen::VectorXd>& p,
                                              double threshold) {
  const auto ranked = rank_labels(p);
  std::vector<RelationId> candidates;
  double score = 0.0;
  for (RelationId r : ranked) {
    score += p[r];
    candidates.push_back(r);
    if (score > threshold) break;
  }
  return candidates;
}

std::vector<RelationId> complement(std::span<const RelationId> candidates,
                                   int num_relations) {
  std::vector<bool> in(num_relations, false);
  for (auto c : candidates) in.at(c) = true;
  std::vector<RelationId> out;
  for (RelationId r = 0; r < num_relations; ++r) {
    if (!in[r]) out.push_back(r);
  }
  return out;
}

Partition partition_dynamic(const Eigen::MatrixXd& probs, double threshold) {
  const int m = static_cast<int>(probs.cols());
  Partition out;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const auto index = static_cast<std::size_t>(i);
    auto candidates = accumulate_candidates(probs.row(i).transpose(), threshold);
    const int size = static_cast<int>(candidates.size());
    if (size == 1) {
      out.confident.push_back({index, candidates.front()});
    } else if (size <= m - 1) {
      auto negatives = complement(candidates, m);
      out.ambiguous.push_back({index, std::move(candidates), std::move(negatives)});
    } else {
      out.hard.push_back(index);
    }
  }
  return out;
}

Partition partition_fixed_n(const Eigen::MatrixXd& probs, const PartitionConfig& cfg) {
  const int m = static_cast<int>(probs.cols());
  cfg.validate(m);
  if (!cfg.fixed_n) throw ConfigError("fixed_n mode requires fixed_n");
  const int n = *cfg.fixed_n;
  Partition out;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const auto index = static_cast<std::size_t>(i);
    const Eigen::VectorXd p = probs.row(i).transpose();
    const auto dynamic = accumulate_candidates(p, cfg.threshold);
    if (dynamic.size() == 1) {
      out.confident.push_back({index, dynamic.front()});
      continue;
    }
    if (cfg.overflow == FixedNOverflow::kExclude &&
        static_cast<int>(dynamic.size()) > n) {
      out.hard.push_back(index);
      continue;
    }
    auto ranked = rank_labels(p);
    ranked.resize(static_cast<std::size_t>(n));
    auto negatives = complement(ranked, m);
    out.ambiguous.push_back({index, std::move(ranked), std::move(negatives)});
  }
  return out;
}

Partition partition(const Eigen::MatrixXd& probs, const PartitionConfig& cfg) {
  cfg.validate(static_cast<int>(probs.cols()));
  if (cfg.mode == PartitionMode::kFixedN) return partition_fixed_n(probs, cfg);
  return partition_dynamic(probs, cfg.threshold);
}

Partition partition(std::span<const AutoAnnotatedInstance> annotated,
                    const PartitionConfig& cfg) {
  if (annotated.empty()) return {};
  Eigen::MatrixXd probs(static_cast<Eigen::Index>(annotated.size()),
                        annotated.front().p.size());
  for (std::size_t i = 0; i < annotated.size(); ++i) {
    probs.row(static_cast<Eigen::Index>(i)) = annotated[i].p.transpose();
  }
  return partition(probs, cfg);
}

TaggedInstance tag_human(Eigen::VectorXd features, RelationId gold, int num_relations) {
  return {std::move(features), Label::one_hot(num_relations, gold), TagMode::kHuman, {}};
}

TaggedInstance tag(Eigen::VectorXd features, const Eigen::VectorXd& p, TagMode mode,
                   std::span<const RelationId> candidates) {
  const auto m = p.size();
  const auto top = argmax(p);
  TaggedInstance out;
  out.features = std::move(features);
  out.mode = mode;
  switch (mode) {
    case TagMode::kHuman:
      throw std::invalid_argument("human tags come from gold labels; use tag_human");
    case TagMode::kHard:
      out.label = Label::one_hot(m, top);
      return out;
    case TagMode::kSoft:
      out.label = {p, false};
      return out;
    case TagMode::kHardNegative: {
      out.label = Label::one_hot(m, top, true);
      const RelationId argmax_id = static_cast<RelationId>(top);
      out.negative_set = complement(std::span(&argmax_id, 1), static_cast<int>(m));
      return out;
    }
    case TagMode::kPartial:
    case TagMode::kPartialPositive:
      break;
  }
  if (candidates.size() < 2 || static_cast<Eigen::Index>(candidates.size()) > m - 1) {
    throw std::invalid_argument(
        "partial tagging needs an ambiguous member with 2 <= |C+| <= M-1");
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  for (auto c : candidates) y[c] = 1.0;
  if (mode == TagMode::kPartial) {
    out.label = {std::move(y), true};
    out.negative_set = complement(candidates, static_cast<int>(m));
  } else {
    out.label = {y / static_cast<double>(candidates.size()), false};
  }
  return out;
}

RelationId draw_negative(const TaggedInstance& item, Rng& rng) {
  if (item.negative_set.empty()) {
    throw std::invalid_argument("cannot sample from an empty negative-label set");
  }
  std::uniform_int_distribution<std::size_t> pick(0, item.negative_set.size() - 1);
  return item.negative_set[pick(rng)];
}

Label sample_negative_label(const TaggedInstance& item, Rng& rng) {
  return Label::one_hot(item.label.y.size(), draw_negative(item, rng), true);
}

void write_partition_dump(std::ostream& out, const Partition& partition,
                          const std::vector<RelationInstance>& instances,
                          const Eigen::MatrixXd& probs, const RelationSchema& schema) {
  const std::size_t n = instances.size();
  if (partition.size() != n || static_cast<std::size_t>(probs.rows()) != n) {
    throw std::invalid_argument("partition, instances and probabilities disagree");
  }
  std::vector<const char*> set(n, "hard");
  std::vector<std::vector<RelationId>> candidates(n);
  for (const auto& c : partition.confident) {
    set[c.index] = "confident";
    candidates[c.index] = {c.label};
  }
  for (const auto& a : partition.ambiguous) {
    set[a.index] = "ambiguous";
    candidates[a.index] = a.candidates;
  }
  for (auto h : partition.hard) {
    candidates[h] = rank_labels(probs.row(static_cast<Eigen::Index>(h)).transpose());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd p = probs.row(static_cast<Eigen::Index>(i)).transpose();
    ordered_json j;
    j["id"] = instances[i].id;
    j["gold"] = instances[i].gold ? json(schema.name(*instances[i].gold)) : json(nullptr);
    j["set"] = set[i];
    ordered_json ranked = ordered_json::array();
    for (auto r : rank_labels(p)) ranked.push_back({schema.name(r), p[r]});
    j["ranked"] = std::move(ranked);
    ordered_json cands = ordered_json::array();
    for (auto r : candidates[i]) cands.push_back(schema.name(r));
    j["candidates"] = std::move(cands);
    out << j.dump() << '\n';
  }
}

std::vector<DumpEntry> read_partition_dump(std::istream& in, const RelationSchema& schema) {
  auto relation = [&schema](const json& name, std::size_t line) {
    const auto id = schema.find(name.get<std::string>());
    if (!id) throw DataError("unknown relation '" + name.get<std::string>() + "'", line);
    return *id;
  };
  std::vector<DumpEntry> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(text);
      DumpEntry e;
      e.id = j.at("id").get<std::string>();
      if (!j.at("gold").is_null()) e.gold = relation(j["gold"], line);
      e.set = j.at("set").get<std::string>();
      if (e.set != "confident" && e.set != "ambiguous" && e.set != "hard") {
        throw DataError("unknown set '" + e.set + "'", line);
      }
      for (const auto& pair : j.at("ranked")) {
        e.ranked.emplace_back(relation(pair.at(0), line), pair.at(1).get<double>());
      }
      for (const auto& c : j.at("candidates")) e.candidates.push_back(relation(c, line));
      out.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw DataError(std::string("malformed dump record: ") + ex.what(), line);
    }
  }
  return out;
}

std::vector<DumpEntry> load_partition_dump(const std::filesystem::path& path,
                                           const RelationSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open partition dump " + path.string());
  return read_partition_dump(in, schema);
}

Partition partition_from_dump(const std::vector<DumpEntry>& entries, int num_relations) {
  Partition out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.set == "confident") {
      out.confident.push_back({i, e.candidates.at(0)});
    } else if (e.set == "ambiguous") {
      out.ambiguous.push_back({i, e.candidates, complement(e.candidates, num_relations)});
    } else {
      out.hard.push_back(i);
    }
  }
  return out;
}

}  // namespace stad
