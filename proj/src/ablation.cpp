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

#include "stad/ablation.hpp"

#include <cstdio>
#include <sstream>

namespace stad {

Recipe recipe_for(Ablation ablation) {
  switch (ablation) {
    case Ablation::kFull: return recipe_for(System::kStad);
    case Ablation::kNoPartialLabeling:
      return {"STAD - partial labeling", true, true, TagMode::kHardNegative};
    case Ablation::kNoSetNegative:
      return {"STAD - set-negative training", true, true, TagMode::kPartialPositive};
    case Ablation::kNoBoth: return {"STAD - both", true, true, TagMode::kHard};
  }
  return recipe_for(System::kStad);
}

AblationTable ablation_matrix(const PreparedData& data, const PipelineOptions& options,
                              TeacherCache* cache) {
  TeacherCache local;
  if (!cache) cache = &local;
  AblationTable table;
  for (auto a : {Ablation::kFull, Ablation::kNoPartialLabeling, Ablation::kNoSetNegative,
                 Ablation::kNoBoth}) {
    const auto recipe = recipe_for(a);
    table.results.push_back(run_pipeline(data, recipe, options, cache));
    const auto& r = table.results.back();
    table.rows.push_back({recipe.name, r.micro,
                          r.micro.mean - table.results.front().micro.mean});
  }
  return table;
}

std::string format_ablation(const AblationTable& table) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-32s %8s\n", "Method", "Micro F1");
  out << buf;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    if (i == 0) {
      std::snprintf(buf, sizeof buf, "%-32s %8.1f\n", r.name.c_str(), 100 * r.micro.mean);
    } else {
      std::snprintf(buf, sizeof buf, "%-32s %+8.1f\n", r.name.c_str(), 100 * r.delta);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace stad
