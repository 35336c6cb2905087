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

#include "doctest.h"
#include "stad/encoder.hpp"
#include "stad/errors.hpp"

using namespace stad;

namespace {

RelationInstance make(std::vector<std::string> tokens, Span head, Span tail) {
  return {"x", std::move(tokens), head, tail, std::nullopt, SplitTag::kTrain};
}

}  // namespace

TEST_CASE("feature length is twice the block width") {
  FeatureConfig cfg;
  cfg.dim_per_entity = 64;
  for (std::size_t n : {2, 5, 30}) {
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(i));
    const auto h = featurize(insert_entity_markers(make(tokens, {0, 1}, {n - 1, n})), cfg);
    CHECK(h.size() == 128);
  }
}

TEST_CASE("minimal sentence gives two unit-norm blocks") {
  FeatureConfig cfg;
  const auto h = featurize(insert_entity_markers(make({"a", "b"}, {0, 1}, {1, 2})), cfg);
  CHECK(h.head(cfg.dim_per_entity).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.tail(cfg.dim_per_entity).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tokens outside windows and the inter-entity span do not matter") {
  FeatureConfig cfg;
  cfg.window = 2;
  // positions 0..2 and 10..12 are outside both windows
  std::vector<std::string> a = {"p", "q", "r", "L1", "L2", "H", "mid", "T", "R1", "R2",
                                "s", "t", "u"};
  std::vector<std::string> b = a;
  b[0] = "zz";
  b[1] = "yy";
  b[11] = "xx";
  std::swap(b[10], b[12]);
  const auto ha = featurize(insert_entity_markers(make(a, {5, 6}, {7, 8})), cfg);
  const auto hb = featurize(insert_entity_markers(make(b, {5, 6}, {7, 8})), cfg);
  CHECK(ha == hb);

  std::vector<std::string> c = a;
  c[4] = "changed";  // inside the head's left window
  const auto hc = featurize(insert_entity_markers(make(c, {5, 6}, {7, 8})), cfg);
  CHECK_FALSE(ha == hc);
}

TEST_CASE("featurization is deterministic and seed dependent") {
  FeatureConfig cfg;
  const auto x = make({"the", "cat", "sat", "on", "mat"}, {1, 2}, {4, 5});
  const auto h1 = featurize(insert_entity_markers(x), cfg);
  CHECK(h1 == featurize(insert_entity_markers(x), cfg));
  cfg.hash_seed = 9;
  CHECK_FALSE(h1 == featurize(insert_entity_markers(x), cfg));
}

TEST_CASE("entity order changes the representation") {
  FeatureConfig cfg;
  const auto fwd = featurize(insert_entity_markers(make({"a", "of", "b"}, {0, 1}, {2, 3})), cfg);
  const auto rev = featurize(insert_entity_markers(make({"a", "of", "b"}, {2, 3}, {0, 1})), cfg);
  CHECK_FALSE(fwd == rev);
}

TEST_CASE("feature config validation") {
  FeatureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dim_per_entity = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.ngram_orders.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.window = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  FeatureConfig other;
  other.window = 4;
  CHECK(FeatureConfig{}.fingerprint() != other.fingerprint());
}

TEST_CASE("featurize_all stacks rows") {
  FeatureConfig cfg;
  cfg.dim_per_entity = 16;
  std::vector<RelationInstance> xs = {make({"a", "b"}, {0, 1}, {1, 2}),
                                      make({"c", "d", "e"}, {0, 1}, {2, 3})};
  const auto mat = featurize_all(xs, cfg);
  CHECK(mat.rows() == 2);
  CHECK(mat.cols() == 32);
  CHECK(Eigen::VectorXd(mat.row(1).transpose()) ==
        featurize(insert_entity_markers(xs[1]), cfg));
}
