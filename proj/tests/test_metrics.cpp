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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "stad/metrics.hpp"

using namespace stad;

namespace {

std::vector<PredictionRecord> one_hot_records(const std::vector<int>& gold,
                                              const std::vector<int>& pred, int m) {
  std::vector<PredictionRecord> out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    Eigen::VectorXd p = Eigen::VectorXd::Constant(m, 0.1 / m);
    p[pred[i]] += 0.9;
    out.push_back({gold[i], p});
  }
  return out;
}

}  // namespace

TEST_CASE("micro-F1 examples") {
  const RelationSchema plain({"a", "b", "c"});
  CHECK(micro_f1(one_hot_records({0, 1, 2}, {0, 1, 2}, 3), plain) == 1.0);
  CHECK(micro_f1(one_hot_records({0, 1, 2, 0}, {0, 1, 2, 1}, 3), plain) == 0.75);

  const RelationSchema with_other({"a", "b", "Other"}, "Other");
  const auto records = one_hot_records({0, 1, 2}, {0, 1, 0}, 3);
  CHECK(micro_f1(records, with_other) == doctest::Approx(0.8).epsilon(1e-12));
  const std::vector<RelationId> gold = {0, 1, 2}, pred = {0, 1, 0};
  const auto c = count_micro(gold, pred, 2);
  CHECK(c.tp == 2);
  CHECK(c.fp == 1);
  CHECK(c.fn == 0);
  CHECK(c.score().precision == doctest::Approx(2.0 / 3.0));
  CHECK(c.score().recall == 1.0);

  CHECK_THROWS_AS(micro_f1(std::vector<PredictionRecord>{}, plain), std::invalid_argument);
}

TEST_CASE("micro-F1 ties go to the lowest index") {
  const RelationSchema schema({"a", "b", "c"});
  std::vector<PredictionRecord> r = {{1, Eigen::Vector3d(0.4, 0.4, 0.2)}};
  CHECK(micro_f1(r, schema) == 0.0);
  r[0].gold = 0;
  CHECK(micro_f1(r, schema) == 1.0);
}

TEST_CASE("macro-F1 examples") {
  const RelationSchema two({"a", "b"});
  CHECK(macro_f1(one_hot_records({0, 1}, {0, 1}, 2), two) == 1.0);
  const std::vector<RelationId> gold = {0, 1, 1}, pred = {0, 0, 0};
  const auto per = per_relation_scores(gold, pred, 2, std::nullopt);
  CHECK(per[1].f1 == 0.0);
  // one perfectly predicted relation, one with gold but never predicted
  const std::vector<RelationId> g3 = {0, 1}, p3 = {0, 2};
  CHECK(macro_f1(g3, p3, 3, 2) == doctest::Approx(0.5));
}

TEST_CASE("macro equals micro under a symmetric confusion") {
  // each class: 3 correct, 1 sent to the next class
  std::vector<RelationId> gold, pred;
  for (int c = 0; c < 4; ++c) {
    for (int i = 0; i < 3; ++i) {
      gold.push_back(c);
      pred.push_back(c);
    }
    gold.push_back(c);
    pred.push_back((c + 1) % 4);
  }
  CHECK(std::abs(macro_f1(gold, pred, 4) - micro_f1(gold, pred)) < 1e-9);
}

TEST_CASE("micro-F1 agrees with the confusion-matrix oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> msize(2, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = msize(rng);
    std::uniform_int_distribution<int> label(0, m - 1);
    std::vector<int> gold(1 + trial % 40), pred(gold.size());
    for (std::size_t i = 0; i < gold.size(); ++i) {
      gold[i] = label(rng);
      pred[i] = rng() % 3 == 0 ? gold[i] : label(rng);
    }
    const std::optional<int> excluded =
        trial % 2 ? std::optional<int>(label(rng)) : std::nullopt;
    const std::vector<RelationId> g(gold.begin(), gold.end()), p(pred.begin(), pred.end());
    CHECK(micro_f1(g, p, excluded) ==
          doctest::Approx(oracle::micro_f1(gold, pred, m, excluded)).epsilon(1e-12));
  }
}

TEST_CASE("top-n properties") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 7;
    const RelationSchema schema = [m] {
      std::vector<std::string> names;
      for (int i = 0; i < m; ++i) names.push_back("r" + std::to_string(i));
      return RelationSchema(names);
    }();
    std::vector<PredictionRecord> records;
    for (int i = 0; i < 30; ++i) {
      records.push_back({static_cast<RelationId>(rng() % m),
                         testing::random_distribution(rng, m, i % 4 == 0)});
    }
    double last = 0;
    for (int n = 1; n <= m; ++n) {
      const double f = top_n_f1(records, schema, n);
      CHECK(f >= last);
      last = f;
      long hits = 0;
      for (const auto& r : records) hits += oracle::rank_of(r.p, r.gold) < n;
      CHECK(f == doctest::Approx(static_cast<double>(hits) / 30).epsilon(1e-12));
    }
    CHECK(last == 1.0);
    CHECK(top_n_f1(records, schema, 1) == micro_f1(records, schema));
    CHECK_THROWS_AS(top_n_f1(records, schema, 0), std::invalid_argument);
    CHECK_THROWS_AS(top_n_f1(records, schema, m + 1), std::invalid_argument);
  }
}

TEST_CASE("gold at rank two counts at n = 2") {
  const RelationSchema schema({"a", "b", "c"});
  std::vector<PredictionRecord> r = {{1, Eigen::Vector3d(0.5, 0.3, 0.2)}};
  CHECK(top_n_f1(r, schema, 1) == 0.0);
  CHECK(top_n_f1(r, schema, 2) == 1.0);
}

TEST_CASE("evaluate fills every field") {
  const RelationSchema schema({"a", "b", "c"});
  const auto report = evaluate(one_hot_records({0, 1, 2, 2}, {0, 2, 2, 2}, 3), schema);
  CHECK(report.micro_f1 == 0.75);
  CHECK(report.support == std::vector<long>{1, 1, 2});
  CHECK(report.per_relation.size() == 3);
  CHECK(report.top_n.size() == 3);
  CHECK(report.top_n.at(3) == 1.0);
  CHECK(report.per_relation[2].precision == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("make_records checks lengths") {
  const std::vector<RelationId> gold = {0, 1};
  CHECK_THROWS_AS(make_records(Eigen::MatrixXd::Zero(3, 2), gold), std::invalid_argument);
  const auto r = make_records(Eigen::MatrixXd::Identity(2, 2), gold);
  CHECK(r[1].p == Eigen::Vector2d(0, 1));
}
