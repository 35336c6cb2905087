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

// Ablations of the ambiguous-data treatment.

#ifndef STAD_ABLATION_HPP_
#define STAD_ABLATION_HPP_

#include <string>
#include <vector>

#include "stad/analysis.hpp"
#include "stad/pipeline.hpp"

namespace stad {

enum class Ablation {
  kFull,                // partial labels + set-negative training
  kNoPartialLabeling,   // argmax tag + set-negative training on the complement
  kNoSetNegative,       // partial labels + positive training averaged over C+
  kNoBoth,              // argmax tag + positive training (= Hard-Label)
};

Recipe recipe_for(Ablation ablation);

struct AblationRow {
  std::string name;
  SeedAggregate micro;
  double delta = 0;  // micro-F1 mean minus the full system's
};

struct AblationTable {
  std::vector<AblationRow> rows;  // full system first
  std::vector<ExperimentResult> results;
};

AblationTable ablation_matrix(const PreparedData& data, const PipelineOptions& options,
                              TeacherCache* cache = nullptr);

std::string format_ablation(const AblationTable& table);

}  // namespace stad

#endif  // STAD_ABLATION_HPP_
