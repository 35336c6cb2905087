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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   stad_acceptance [--only 1,2,...] [--known-red 8,...] [--workdir DIR]
//
// Exits 0 when every failing criterion is listed in --known-red.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "stad/ablation.hpp"
#include "stad/analysis.hpp"
#include "stad/commands.hpp"
#include "stad/metrics.hpp"
#include "stad/model.hpp"
#include "stad/selftrain.hpp"

using namespace stad;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols, double sd) {
  std::normal_distribution<double> n(0, sd);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = n(rng);
  }
  return m;
}

// --- 1. loss equivalence ------------------------------------------------------

Outcome loss_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const int m = 2 + t % 9;
    const Eigen::VectorXd p = testing::random_distribution(rng, m);
    const auto y = Label::one_hot(m, static_cast<Eigen::Index>(rng() % m)).y;
    worst = std::max(worst, std::abs(loss_unified<double>(p, {y, false}) -
                                     loss_positive<double>(p, y)));
    worst = std::max(worst, std::abs(loss_unified<double>(p, {y, true}) -
                                     loss_set_negative<double>(p, y)));
  }
  const double secs = seconds_since(start);
  return {worst < 1e-12 && secs < 1.0,
          "max |error| " + fmt("%.2e", worst) + " over 1000 pairs, " + fmt("%.2f", secs) + " s"};
}

// --- 2. gradient check --------------------------------------------------------

Outcome gradient_check() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + static_cast<int>(rng() % 9);
    const int d = 1 + static_cast<int>(rng() % 64);
    const int batch = 1 + static_cast<int>(rng() % 4);
    Model model{random_matrix(rng, m, d, 0.3), random_matrix(rng, m, 1, 0.3).col(0)};
    const Eigen::MatrixXd features = random_matrix(rng, batch, d, 0.5);
    std::vector<Label> labels;
    std::vector<oracle::Example> examples;
    for (int i = 0; i < batch; ++i) {
      Label label;
      if (rng() % 2) {
        label = Label::one_hot(m, static_cast<Eigen::Index>(rng() % m), true);
      } else {
        label = {testing::random_distribution(rng, m), false};
      }
      labels.push_back(label);
      examples.push_back({features.row(i).transpose(), label.y, label.z});
    }
    const auto g = gradient<double>(model, features, labels);
    const auto fd = oracle::finite_difference(model.W, model.b, examples);
    auto rel = [](double a, double n) {
      return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6});
    };
    for (int i = 0; i < m; ++i) {
      worst = std::max(worst, rel(g.db[i], fd.db[i]));
      for (int j = 0; j < d; ++j) worst = std::max(worst, rel(g.dW(i, j), fd.dW(i, j)));
    }
  }
  const double secs = seconds_since(start);
  return {worst < 1e-5 && secs < 10.0, "max relative error " + fmt("%.2e", worst) +
                                           " over 100 batches, " + fmt("%.2f", secs) + " s"};
}

// --- 3. partition oracle ------------------------------------------------------

Eigen::VectorXd tied_distribution(std::mt19937_64& rng, int m) {
  // dyadic masses so equal entries stay exactly equal after normalizing
  std::uniform_int_distribution<int> weight(1, 4);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = weight(rng);
  return v / v.sum();
}

Outcome partition_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  long mismatches = 0, ties = 0, checks = 0;
  for (int t = 0; t < 10000; ++t) {
    const int m = 2 + t % 9;
    Eigen::VectorXd p;
    switch (t % 3) {
      case 0: p = testing::random_distribution(rng, m); break;
      case 1: p = testing::random_distribution(rng, m, true); break;
      default: p = tied_distribution(rng, m); break;
    }
    std::set<double> distinct(p.data(), p.data() + p.size());
    ties += distinct.size() < static_cast<std::size_t>(m);
    for (double threshold : {0.80, 0.85, 0.90, 0.95}) {
      ++checks;
      const auto got = partition_dynamic(p.transpose(), threshold);
      const auto want = oracle::partition(p, threshold);
      bool same = false;
      switch (want.set) {
        case oracle::Set::kConfident:
          same = got.confident.size() == 1 && got.confident[0].label == want.candidates[0];
          break;
        case oracle::Set::kAmbiguous:
          same = got.ambiguous.size() == 1 &&
                 got.ambiguous[0].candidates ==
                     std::vector<RelationId>(want.candidates.begin(), want.candidates.end());
          break;
        case oracle::Set::kHard: same = got.hard.size() == 1; break;
      }
      mismatches += !same;
    }
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && ties > 0 && secs < 5.0,
          std::to_string(mismatches) + " mismatches in " + std::to_string(checks) +
              " checks (" + std::to_string(ties) + " tied distributions), " +
              fmt("%.2f", secs) + " s"};
}

// --- 4. tagging golden --------------------------------------------------------

Outcome tagging_golden() {
  Eigen::VectorXd p(3);
  p << 0.56, 0.42, 0.02;
  const auto part = partition_dynamic(p.transpose(), 0.95);
  if (part.ambiguous.size() != 1) return {false, "distribution is not ambiguous at T = 0.95"};
  const Eigen::VectorXd h = Eigen::VectorXd::Ones(1);
  const auto hard = tag(h, p, TagMode::kHard).label.y;
  const auto soft = tag(h, p, TagMode::kSoft).label.y;
  const auto partial = tag(h, p, TagMode::kPartial, part.ambiguous[0].candidates).label.y;
  const bool ok = hard == Eigen::Vector3d(1, 0, 0) && soft == p &&
                  partial == Eigen::Vector3d(1, 1, 0);
  std::ostringstream s;
  s << "hard [" << hard.transpose() << "], soft [" << soft.transpose() << "], partial ["
    << partial.transpose() << "]";
  return {ok, s.str()};
}

// --- 5. negative step ---------------------------------------------------------

Outcome negative_step() {
  std::mt19937_64 rng(505);
  Rng sampler(506);
  int decreased = 0;
  double smallest = 1;
  for (int t = 0; t < 100; ++t) {
    const int m = 3 + static_cast<int>(rng() % 8);
    const int d = 1 + static_cast<int>(rng() % 32);
    Model model{random_matrix(rng, m, d, 1.0), random_matrix(rng, m, 1, 1.0).col(0)};
    const Eigen::VectorXd h = random_matrix(rng, d, 1, 1.0).col(0);
    const Eigen::VectorXd p = predict_proba(model, h);
    const auto cands = accumulate_candidates(p, 0.5);
    std::vector<RelationId> c(cands.begin(), cands.end());
    if (c.size() < 2) c = {rank_labels(p)[0], rank_labels(p)[1]};
    if (static_cast<int>(c.size()) > m - 1) c.resize(static_cast<std::size_t>(m - 1));
    const auto item = tag(h, p, TagMode::kPartial, c);
    const auto label = sample_negative_label(item, sampler);
    const auto k = argmax(label.y);
    const std::vector<Label> labels = {label};
    const auto g = gradient<double>(model, Eigen::MatrixXd(h.transpose()), labels);
    model.W -= 1e-2 * g.dW;
    model.b -= 1e-2 * g.db;
    const double after = predict_proba(model, h)[k];
    decreased += after < p[k];
    smallest = std::min(smallest, p[k] - after);
  }
  return {decreased == 100, std::to_string(decreased) + "/100 steps lowered p_k (min drop " +
                                fmt("%.2e", smallest) + ")"};
}

// --- 6. metric oracles --------------------------------------------------------

Outcome metric_oracles() {
  std::mt19937_64 rng(606);
  long micro_bad = 0, top_bad = 0, mass_bad = 0;
  double worst_mass = 0;
  for (int t = 0; t < 1000; ++t) {
    const int m = 2 + t % 9;
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("r" + std::to_string(i));
    const RelationSchema schema(names);
    const int n = 1 + static_cast<int>(rng() % 50);
    std::vector<PredictionRecord> records;
    Eigen::MatrixXd probs(n, m);
    long correct = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd p = testing::random_distribution(rng, m, i % 5 == 0);
      const auto gold = static_cast<RelationId>(rng() % m);
      records.push_back({gold, p});
      probs.row(i) = p.transpose();
      correct += oracle::rank_of(p, gold) == 0;
    }
    const double accuracy = static_cast<double>(correct) / n;
    micro_bad += micro_f1(records, schema) != accuracy;
    double last = -1;
    for (int k = 1; k <= m; ++k) {
      const double f = top_n_f1(records, schema, k);
      top_bad += f < last;
      last = f;
    }
    top_bad += last != 1.0;
    const auto part = partition_dynamic(probs, 0.8);
    double total = 0;
    for (double w : weighted_ambiguous_counts(part.ambiguous, m)) total += w;
    const double err = std::abs(total - static_cast<double>(part.ambiguous.size()));
    worst_mass = std::max(worst_mass, err);
    mass_bad += err > 1e-9;
  }
  return {micro_bad == 0 && top_bad == 0 && mass_bad == 0,
          "micro != accuracy: " + std::to_string(micro_bad) +
              ", top-n violations: " + std::to_string(top_bad) +
              ", max mass error " + fmt("%.1e", worst_mass)};
}

// --- 7-10. end to end on the synthetic corpus -----------------------------------

struct EndToEnd {
  fs::path root;
  ExperimentConfig config;

  explicit EndToEnd(const fs::path& dir) : root(dir) {
    fs::remove_all(root);
    cmd_synth(SynthParams{}, root / "corpus");
    config.name = "synthetic";
    config.data = {root / "corpus" / "dataset.jsonl", root / "corpus" / "schema.json",
                   root / "splits"};
    config.output_dir = root / "run";
    config.systems = {"Supervised", "Self-Training", "STAD"};
    std::ostringstream log;
    cmd_prepare(config, log);
  }

  double mean_f1(const std::string& system_dir) const {
    const auto j = nlohmann::json::parse(
        testing::read_file(config.output_dir / system_dir / "aggregate.json"));
    return j.at("micro_f1").at("mean").get<double>();
  }
};

Outcome end_to_end(EndToEnd& e2e) {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream log;
  cmd_run(e2e.config, true, false, log);
  const double secs = seconds_since(start);
  const double sup = 100 * e2e.mean_f1("supervised");
  const double st = 100 * e2e.mean_f1("self-training");
  const double stad = 100 * e2e.mean_f1("stad");
  return {stad >= st + 0.5 && st >= sup + 1.0 && secs < 120,
          "Supervised " + fmt("%.2f", sup) + " / Self-Training " + fmt("%.2f", st) +
              " / STAD " + fmt("%.2f", stad) + " (needs +1.0, +0.5), " + fmt("%.1f", secs) +
              " s"};
}

Outcome ablation_direction(EndToEnd& e2e) {
  const auto data = load_prepared(e2e.config);
  PipelineOptions options;
  options.train = e2e.config.train;
  options.partition = e2e.config.partition;
  options.seeds = e2e.config.seeds;
  const auto table = ablation_matrix(data, options);
  const double full = 100 * table.rows[0].micro.mean;
  const double no_partial = 100 * table.rows[1].micro.mean;
  const double no_setneg = 100 * table.rows[2].micro.mean;
  const double no_both = 100 * table.rows[3].micro.mean;
  const bool below = no_partial <= full && no_setneg <= full && no_both <= full;
  const bool both_worst = no_both <= std::min(no_partial, no_setneg) + 0.3;
  return {below && both_worst,
          "STAD " + fmt("%.2f", full) + ", deltas " + fmt("%+.2f", no_partial - full) +
              " / " + fmt("%+.2f", no_setneg - full) + " / " + fmt("%+.2f", no_both - full) +
              " (each <= 0: " + (below ? "yes" : "no") +
              "; -both <= min + 0.3: " + (both_worst ? "yes" : "no") + ")"};
}

Outcome determinism(EndToEnd& e2e) {
  // compares against the reports left by the end-to-end criterion
  std::map<fs::path, std::string> first;
  auto collect = [&e2e](std::map<fs::path, std::string>& out) {
    for (const auto& entry : fs::recursive_directory_iterator(e2e.config.output_dir)) {
      const auto name = entry.path().filename().string();
      if (name == "aggregate.json" || name.rfind("seed_", 0) == 0) {
        out[fs::relative(entry.path(), e2e.config.output_dir)] =
            testing::read_file(entry.path());
      }
    }
  };
  if (!fs::exists(e2e.config.output_dir / "stad" / "aggregate.json")) {
    std::ostringstream log;
    cmd_run(e2e.config, true, false, log);
  }
  collect(first);
  std::ostringstream log;
  cmd_run(e2e.config, true, false, log);
  std::map<fs::path, std::string> second;
  collect(second);
  long aggregates = 0;
  for (const auto& [path, _] : first) aggregates += path.filename() == "aggregate.json";
  const bool same = first == second && aggregates == 3;
  return {same, std::to_string(first.size()) + " report files (" + std::to_string(aggregates) +
                    " aggregates) " + (same ? "byte-identical" : "differ")};
}

Outcome fixed_n_sweep(EndToEnd& e2e) {
  auto cfg = e2e.config;
  cfg.output_dir = e2e.root / "sweep";
  cfg.partition.overflow = FixedNOverflow::kExclude;
  cfg.sweep.systems = {"Hard-Label", "STAD"};
  cfg.sweep.fixed_n = {2, 3, 4, 5, 6, 7, 8, 9};
  std::ostringstream log;
  cmd_sweep(cfg, SweepAxis::kFixedN, true, log);

  std::istringstream csv(testing::read_file(cfg.output_dir / "sweep_fixed_n.csv"));
  std::string line;
  std::getline(csv, line);
  bool well_formed = line == "system,axis,value,mean_micro_f1,std_micro_f1,seeds";
  std::map<std::string, std::vector<std::pair<int, double>>> points;
  while (std::getline(csv, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6 || f[1] != "fixed_n" || f[5] != "5") {
      well_formed = false;
      continue;
    }
    const double mean = std::stod(f[3]);
    well_formed = well_formed && mean >= 0 && mean <= 1 && !f[4].empty();
    points[f[0]].emplace_back(std::stoi(f[2]), mean);
  }
  auto range = [&points](const std::string& s) {
    double lo = 1, hi = 0;
    for (const auto& [_, v] : points[s]) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return 100 * (hi - lo);
  };
  for (const auto& s : cfg.sweep.systems) {
    std::vector<int> ns;
    for (const auto& [n, _] : points[s]) ns.push_back(n);
    well_formed = well_formed && ns == cfg.sweep.fixed_n;
  }
  well_formed = well_formed && points.size() == 2;
  const double stad = range("STAD"), hard = range("Hard-Label");
  return {well_formed && stad < hard,
          std::string(well_formed ? "8-point CSV per system" : "malformed CSV") +
              "; range over N: STAD " + fmt("%.2f", stad) + ", Hard-Label " +
              fmt("%.2f", hard)};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STAD acceptance suite"};
  std::string only, known_red;
  std::string workdir = (fs::temp_directory_path() / "stad_acceptance").string();
  app.add_option("--only", only, "Comma-separated criteria to run");
  app.add_option("--known-red", known_red, "Criteria expected to fail");
  app.add_option("--workdir", workdir, "Scratch directory for the end-to-end runs");
  CLI11_PARSE(app, argc, argv);
  const auto selected = parse_list(only);
  const auto expected_red = parse_list(known_red);

  std::optional<EndToEnd> e2e;
  auto corpus = [&]() -> EndToEnd& {
    if (!e2e) e2e.emplace(workdir);
    return *e2e;
  };
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"loss equivalence", loss_equivalence},
      {"gradient check", gradient_check},
      {"partition oracle", partition_oracle},
      {"tagging golden", tagging_golden},
      {"negative step", negative_step},
      {"metric oracles", metric_oracles},
      {"end-to-end ordering", [&] { return end_to_end(corpus()); }},
      {"ablation direction", [&] { return ablation_direction(corpus()); }},
      {"determinism", [&] { return determinism(corpus()); }},
      {"fixed-N sweep", [&] { return fixed_n_sweep(corpus()); }},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(),
                !o.pass && expected_red.count(id) ? " [known red]" : "");
    std::fflush(stdout);
  }
  bool unexpected = false;
  for (int id : failed) unexpected = unexpected || !expected_red.count(id);
  if (e2e) fs::remove_all(e2e->root);
  return unexpected ? 1 : 0;
}
