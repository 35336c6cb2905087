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

#include "stad/trainer.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "stad/errors.hpp"
#include "stad/metrics.hpp"

namespace stad {

std::string_view to_string(TagMode mode) {
  switch (mode) {
    case TagMode::kHuman: return "human";
    case TagMode::kHard: return "hard";
    case TagMode::kSoft: return "soft";
    case TagMode::kPartial: return "partial";
    case TagMode::kHardNegative: return "hard-negative";
    case TagMode::kPartialPositive: return "partial-positive";
  }
  return "unknown";
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
  if (max_epochs < 0) throw ConfigError("max_epochs must be non-negative");
  if (patience < 1) throw ConfigError("patience must be positive");
  if (!(l2 >= 0)) throw ConfigError("l2 must be non-negative");
}

double dev_micro_f1(const Model& model, const LabeledFeatures& dev,
                    const RelationSchema& schema) {
  const Eigen::MatrixXd probs = predict_proba_rows(model, dev.features);
  std::vector<RelationId> pred(dev.gold.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pred[i] = static_cast<RelationId>(argmax(probs.row(static_cast<Eigen::Index>(i))));
  }
  return micro_f1(dev.gold, pred, schema.negative());
}

TrainResult train(const Model& init, std::span<const TaggedInstance> data,
                  const LabeledFeatures& dev, const RelationSchema& schema,
                  const TrainConfig& config, const NegativeSampler& sampler) {
  config.validate();
  TrainResult result{init, 0, 0, 0.0};
  if (config.max_epochs == 0) return result;
  if (data.empty()) throw std::invalid_argument("training data is empty");

  const auto m = init.num_relations();
  const auto d = init.feature_dim();
  Rng shuffle_rng = derive_stream(config.seed, stream::kStudent);
  Rng negative_rng = derive_stream(config.seed, stream::kNegatives);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  Model model = init;
  double best = -1.0;
  int since_best = 0;
  Eigen::MatrixXd batch;
  std::vector<Label> labels;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const auto end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const auto rows = static_cast<Eigen::Index>(end - start);
      batch.resize(rows, d);
      labels.clear();
      for (std::size_t j = start; j < end; ++j) {
        const auto& x = data[order[j]];
        batch.row(static_cast<Eigen::Index>(j - start)) = x.features.transpose();
        if (x.label.z) {
          labels.push_back(Label::one_hot(m, sampler(x, negative_rng), true));
        } else {
          labels.push_back(x.label);
        }
      }
      const auto grad = gradient<double>(model, batch, labels, config.l2);
      model.W -= config.learning_rate * grad.dW;
      model.b -= config.learning_rate * grad.db;
    }
    result.epochs_run = epoch;

    if (dev.empty()) {
      result.model = model;
      result.best_epoch = epoch;
      continue;
    }
    const double f1 = dev_micro_f1(model, dev, schema);
    if (f1 > best) {
      best = f1;
      since_best = 0;
      result.model = model;
      result.best_epoch = epoch;
      result.best_dev_f1 = f1;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  const auto& w = ckpt.model.W;
  out << "stad-checkpoint 1\n"
      << "schema " << hex64(ckpt.schema_fingerprint) << '\n'
      << "features " << hex64(ckpt.feature_fingerprint) << '\n'
      << "dims " << w.rows() << ' ' << w.cols() << '\n';
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      if (c) out << ' ';
      write_value(out, w(r, c));
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < ckpt.model.b.size(); ++r) {
    if (r) out << ' ';
    write_value(out, ckpt.model.b[r]);
  }
  out << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::string magic, key;
  int version = 0;
  Checkpoint ckpt;
  in >> magic >> version;
  if (magic != "stad-checkpoint" || version != 1) {
    throw DataError("unsupported checkpoint header in " + path.string());
  }
  std::string hex;
  in >> key >> hex;
  if (key != "schema") throw DataError("checkpoint: expected schema hash");
  ckpt.schema_fingerprint = std::stoull(hex, nullptr, 16);
  in >> key >> hex;
  if (key != "features") throw DataError("checkpoint: expected feature hash");
  ckpt.feature_fingerprint = std::stoull(hex, nullptr, 16);
  Eigen::Index rows = 0, cols = 0;
  in >> key >> rows >> cols;
  if (key != "dims" || !in || rows < 1 || cols < 1) {
    throw DataError("checkpoint: invalid dimensions");
  }
  ckpt.model = Model::zeros(rows, cols);
  auto read = [&in](double& v) {
    std::string tok;
    if (!(in >> tok)) throw DataError("checkpoint: truncated parameters");
    v = std::strtod(tok.c_str(), nullptr);
  };
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) read(ckpt.model.W(r, c));
  }
  for (Eigen::Index r = 0; r < rows; ++r) read(ckpt.model.b[r]);
  return ckpt;
}

}  // namespace stad
