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

#include "stad/pipeline.hpp"

#include "stad/errors.hpp"
#include "stad/hash.hpp"

namespace stad {

std::string_view to_string(System system) {
  switch (system) {
    case System::kSupervised: return "Supervised";
    case System::kSelfTraining: return "Self-Training";
    case System::kHardLabel: return "Hard-Label";
    case System::kSoftLabel: return "Soft-Label";
    case System::kStad: return "STAD";
  }
  return "unknown";
}

System parse_system(std::string_view name) {
  for (auto s : kAllSystems) {
    if (to_string(s) == name) return s;
  }
  std::string valid;
  for (auto s : kAllSystems) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(s);
  }
  throw ConfigError("unknown system '" + std::string(name) + "'; valid systems: " + valid);
}

Recipe recipe_for(System system) {
  const std::string name(to_string(system));
  switch (system) {
    case System::kSupervised: return {name, false, false, std::nullopt};
    case System::kSelfTraining: return {name, true, true, std::nullopt};
    case System::kHardLabel: return {name, true, true, TagMode::kHard};
    case System::kSoftLabel: return {name, true, true, TagMode::kSoft};
    case System::kStad: return {name, true, true, TagMode::kPartial};
  }
  throw ConfigError("unknown system");
}

namespace {

LabeledFeatures labeled(const std::vector<RelationInstance>& data,
                        const FeatureConfig& features) {
  LabeledFeatures out;
  out.features = featurize_all(data, features);
  out.gold.reserve(data.size());
  for (const auto& x : data) {
    if (!x.gold) throw DataError("instance '" + x.id + "' has no gold relation");
    out.gold.push_back(*x.gold);
  }
  return out;
}

}  // namespace

PreparedData PreparedData::from_bundle(const SplitBundle& bundle,
                                       const RelationSchema& schema,
                                       const FeatureConfig& features) {
  features.validate();
  PreparedData out{schema, features, labeled(bundle.train, features),
                   labeled(bundle.dev, features), labeled(bundle.test, features),
                   bundle.unlabeled, featurize_all(bundle.unlabeled, features)};
  return out;
}

std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t stage) {
  return Fnv1a(seed).mix_u64(stage).digest();
}

std::vector<TaggedInstance> assemble_training_set(const PreparedData& data,
                                                  const Recipe& recipe,
                                                  const Eigen::MatrixXd& teacher_probs,
                                                  const Partition& partition) {
  const int m = data.schema.size();
  std::vector<TaggedInstance> out;
  for (std::size_t i = 0; i < data.train.gold.size(); ++i) {
    out.push_back(tag_human(data.train.features.row(static_cast<Eigen::Index>(i)).transpose(),
                            data.train.gold[i], m));
  }
  if (!recipe.annotate) return out;
  auto row = [](const Eigen::MatrixXd& mat, std::size_t i) -> Eigen::VectorXd {
    return mat.row(static_cast<Eigen::Index>(i)).transpose();
  };
  if (recipe.use_confident) {
    for (const auto& c : partition.confident) {
      out.push_back(tag(row(data.unlabeled_features, c.index),
                        row(teacher_probs, c.index), TagMode::kHard));
    }
  }
  if (recipe.ambiguous_mode) {
    for (const auto& a : partition.ambiguous) {
      out.push_back(tag(row(data.unlabeled_features, a.index),
                        row(teacher_probs, a.index), *recipe.ambiguous_mode,
                        a.candidates));
    }
  }
  return out;
}

SeedRun run_seed(const PreparedData& data, const Recipe& recipe,
                 const PipelineOptions& options, std::uint64_t seed,
                 TeacherCache* cache, SeedArtifacts* artifacts) {
  const int m = data.schema.size();
  const auto d = static_cast<Eigen::Index>(data.features.width());
  const Model zeros = Model::zeros(m, d);

  // (1) teacher on human data
  TrainResult teacher;
  if (cache && cache->by_seed.count(seed)) {
    teacher = cache->by_seed.at(seed);
  } else {
    const auto human = assemble_training_set(data, recipe_for(System::kSupervised),
                                             Eigen::MatrixXd(), Partition{});
    TrainConfig cfg = options.train;
    cfg.seed = stage_seed(seed, stream::kTeacher);
    teacher = train(zeros, human, data.dev, data.schema, cfg, draw_negative);
    if (cache) cache->by_seed[seed] = teacher;
  }

  SeedRun run;
  run.seed = seed;
  run.teacher_epoch = teacher.best_epoch;
  Model student = teacher.model;
  Eigen::MatrixXd probs;
  std::optional<Partition> split;

  if (recipe.annotate) {
    // (2) annotate, (3) partition, (4) student on the assembled set
    probs = annotate(teacher.model, data.unlabeled_features);
    split = partition(probs, options.partition);
    std::vector<std::optional<RelationId>> hidden(data.unlabeled.size());
    for (std::size_t i = 0; i < hidden.size(); ++i) hidden[i] = data.unlabeled[i].gold;
    run.partition = partition_stats(*split, m, hidden);

    const auto training = assemble_training_set(data, recipe, probs, *split);
    TrainConfig cfg = options.train;
    cfg.seed = stage_seed(seed, stream::kStudent);
    const auto result = train(zeros, training, data.dev, data.schema, cfg, draw_negative);
    student = result.model;
    run.student_epoch = result.best_epoch;
  } else {
    run.student_epoch = teacher.best_epoch;
  }

  const auto& eval = options.eval_split == EvalSplit::kTest ? data.test : data.dev;
  if (eval.empty()) throw DataError("evaluation split is empty");
  const auto records = make_records(predict_proba_rows(student, eval.features), eval.gold);
  run.report = evaluate(records, data.schema);

  if (artifacts) {
    artifacts->teacher = teacher.model;
    artifacts->student = student;
    artifacts->teacher_probs = std::move(probs);
    artifacts->partition = std::move(split);
  }
  return run;
}

ExperimentResult run_pipeline(const PreparedData& data, const Recipe& recipe,
                              const PipelineOptions& options, TeacherCache* cache,
                              std::vector<SeedArtifacts>* artifacts) {
  if (options.seeds.empty()) throw ConfigError("at least one seed is required");
  options.train.validate();
  options.partition.validate(data.schema.size());
  ExperimentResult result;
  result.system = recipe.name;
  result.eval_split = options.eval_split == EvalSplit::kTest ? "test" : "dev";
  if (artifacts) artifacts->clear();
  for (auto seed : options.seeds) {
    SeedArtifacts a;
    result.runs.push_back(run_seed(data, recipe, options, seed, cache,
                                   artifacts ? &a : nullptr));
    if (artifacts) artifacts->push_back(std::move(a));
  }
  result.finalize();
  return result;
}

}  // namespace stad
