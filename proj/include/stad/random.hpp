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

#ifndef STAD_RANDOM_HPP_
#define STAD_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace stad {

using Rng = std::mt19937_64;

// Independent stream derived from a master seed and a stage tag, so that
// reordering or parallelizing stages never perturbs another stage's draws.
inline Rng derive_stream(std::uint64_t master, std::uint64_t stage,
                         std::uint64_t sub = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stage),
                    static_cast<std::uint32_t>(sub)};
  return Rng(seq);
}

namespace stream {
inline constexpr std::uint64_t kSplit = 1;
inline constexpr std::uint64_t kTeacher = 2;
inline constexpr std::uint64_t kStudent = 3;
inline constexpr std::uint64_t kNegatives = 4;
inline constexpr std::uint64_t kSynth = 5;
}  // namespace stream

}  // namespace stad

#endif  // STAD_RANDOM_HPP_
