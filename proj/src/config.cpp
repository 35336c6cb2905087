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

#include "stad/config.hpp"

#include <fstream>
#include <set>

#include "stad/errors.hpp"
#include "stad/pipeline.hpp"

namespace stad {

using nlohmann::json;
using nlohmann::ordered_json;

void ExperimentConfig::validate() const {
  features.validate();
  train.validate();
  if (!(partition.threshold > 0.0 && partition.threshold < 1.0)) {
    throw ConfigError("partition.threshold must lie in (0, 1)");
  }
  if (partition.mode == PartitionMode::kFixedN && !partition.fixed_n) {
    throw ConfigError("partition.mode fixed_n requires partition.fixed_n");
  }
  if (partition.fixed_n && *partition.fixed_n < 2) {
    throw ConfigError("partition.fixed_n must be >= 2");
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (k_train < 1 || k_dev < 1) throw ConfigError("k_train and k_dev must be >= 1");
  if (systems.empty()) throw ConfigError("systems must not be empty");
  for (const auto& s : systems) parse_system(s);
  for (const auto& s : sweep.systems) parse_system(s);
  for (double t : sweep.thresholds) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("sweep thresholds must lie in (0, 1)");
  }
  for (int n : sweep.fixed_n) {
    if (n < 2) throw ConfigError("sweep fixed_n values must be >= 2");
  }
  for (int k : sweep.k_train) {
    if (k < 1) throw ConfigError("sweep k_train values must be >= 1");
  }
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_path(const json& j, const char* key, std::filesystem::path& out) {
  if (j.contains(key)) out = j.at(key).get<std::string>();
}

}  // namespace

ordered_json to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["name"] = c.name;
  j["data"] = {{"dataset", c.data.dataset.string()},
               {"schema", c.data.schema.string()},
               {"splits", c.data.splits.string()}};
  j["output_dir"] = c.output_dir.string();
  j["systems"] = c.systems;
  j["features"] = {{"dim_per_entity", c.features.dim_per_entity},
                   {"ngram_orders", c.features.ngram_orders},
                   {"window", c.features.window},
                   {"hash_seed", c.features.hash_seed}};
  j["train"] = {{"learning_rate", c.train.learning_rate},
                {"batch_size", c.train.batch_size},
                {"max_epochs", c.train.max_epochs},
                {"patience", c.train.patience},
                {"l2", c.train.l2}};
  ordered_json p;
  p["threshold"] = c.partition.threshold;
  p["mode"] = c.partition.mode == PartitionMode::kDynamic ? "dynamic" : "fixed_n";
  p["fixed_n"] = c.partition.fixed_n ? json(*c.partition.fixed_n) : json(nullptr);
  p["overflow"] = c.partition.overflow == FixedNOverflow::kTruncate ? "truncate" : "exclude";
  j["partition"] = std::move(p);
  j["seeds"] = c.seeds;
  j["k_train"] = c.k_train;
  j["k_dev"] = c.k_dev;
  j["split_seed"] = c.split_seed;
  j["exclude_negative"] = c.exclude_negative;
  j["sweep"] = {{"systems", c.sweep.systems},
                {"thresholds", c.sweep.thresholds},
                {"fixed_n", c.sweep.fixed_n},
                {"k_train", c.sweep.k_train}};
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    reject_unknown(j,
                   {"name", "data", "output_dir", "systems", "features", "train",
                    "partition", "seeds", "k_train", "k_dev", "split_seed",
                    "exclude_negative", "sweep"},
                   "config");
    read(j, "name", c.name);
    if (j.contains("data")) {
      const auto& d = j["data"];
      reject_unknown(d, {"dataset", "schema", "splits"}, "data");
      read_path(d, "dataset", c.data.dataset);
      read_path(d, "schema", c.data.schema);
      read_path(d, "splits", c.data.splits);
    }
    read_path(j, "output_dir", c.output_dir);
    read(j, "systems", c.systems);
    if (j.contains("features")) {
      const auto& f = j["features"];
      reject_unknown(f, {"dim_per_entity", "ngram_orders", "window", "hash_seed"},
                     "features");
      read(f, "dim_per_entity", c.features.dim_per_entity);
      read(f, "ngram_orders", c.features.ngram_orders);
      read(f, "window", c.features.window);
      read(f, "hash_seed", c.features.hash_seed);
    }
    if (j.contains("train")) {
      const auto& t = j["train"];
      reject_unknown(t, {"learning_rate", "batch_size", "max_epochs", "patience", "l2"},
                     "train");
      read(t, "learning_rate", c.train.learning_rate);
      read(t, "batch_size", c.train.batch_size);
      read(t, "max_epochs", c.train.max_epochs);
      read(t, "patience", c.train.patience);
      read(t, "l2", c.train.l2);
    }
    if (j.contains("partition")) {
      const auto& p = j["partition"];
      reject_unknown(p, {"threshold", "mode", "fixed_n", "overflow"}, "partition");
      read(p, "threshold", c.partition.threshold);
      if (p.contains("mode")) {
        const auto mode = p["mode"].get<std::string>();
        if (mode == "dynamic") {
          c.partition.mode = PartitionMode::kDynamic;
        } else if (mode == "fixed_n") {
          c.partition.mode = PartitionMode::kFixedN;
        } else {
          throw ConfigError("partition.mode must be 'dynamic' or 'fixed_n'");
        }
      }
      if (p.contains("fixed_n") && !p["fixed_n"].is_null()) {
        c.partition.fixed_n = p["fixed_n"].get<int>();
      }
      if (p.contains("overflow")) {
        const auto overflow = p["overflow"].get<std::string>();
        if (overflow == "truncate") {
          c.partition.overflow = FixedNOverflow::kTruncate;
        } else if (overflow == "exclude") {
          c.partition.overflow = FixedNOverflow::kExclude;
        } else {
          throw ConfigError("partition.overflow must be 'truncate' or 'exclude'");
        }
      }
    }
    read(j, "seeds", c.seeds);
    read(j, "k_train", c.k_train);
    read(j, "k_dev", c.k_dev);
    read(j, "split_seed", c.split_seed);
    read(j, "exclude_negative", c.exclude_negative);
    if (j.contains("sweep")) {
      const auto& s = j["sweep"];
      reject_unknown(s, {"systems", "thresholds", "fixed_n", "k_train"}, "sweep");
      read(s, "systems", c.sweep.systems);
      read(s, "thresholds", c.sweep.thresholds);
      read(s, "fixed_n", c.sweep.fixed_n);
      read(s, "k_train", c.sweep.k_train);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(config).dump(2) << '\n';
}

}  // namespace stad
