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

#include "stad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stad/errors.hpp"

namespace stad {

using nlohmann::json;
using nlohmann::ordered_json;

std::map<int, long> candidate_size_histogram(const Partition& partition,
                                             int num_relations) {
  std::map<int, long> out;
  if (!partition.confident.empty()) out[1] += static_cast<long>(partition.confident.size());
  for (const auto& a : partition.ambiguous) ++out[static_cast<int>(a.candidates.size())];
  if (!partition.hard.empty()) out[num_relations] += static_cast<long>(partition.hard.size());
  return out;
}

std::vector<double> weighted_ambiguous_counts(std::span<const AmbiguousInstance> ambiguous,
                                              int num_relations) {
  std::vector<double> out(num_relations, 0.0);
  for (const auto& a : ambiguous) {
    const double share = 1.0 / static_cast<double>(a.candidates.size());
    for (auto r : a.candidates) out.at(r) += share;
  }
  return out;
}

SeedAggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("nothing to aggregate");
  SeedAggregate out;
  const double n = static_cast<double>(values.size());
  // shifted by the first value so identical inputs give exactly zero spread
  const double shift = values.front();
  double sum = 0, sq = 0;
  for (double v : values) {
    sum += v - shift;
    sq += (v - shift) * (v - shift);
  }
  out.mean = shift + sum / n;
  if (values.size() >= 2) {
    out.stddev = std::sqrt(std::max(0.0, (sq - sum * sum / n) / (n - 1)));
  }
  return out;
}

SeedAggregate aggregate_seeds(std::span<const MetricReport> reports) {
  std::vector<double> micro;
  micro.reserve(reports.size());
  for (const auto& r : reports) micro.push_back(r.micro_f1);
  return aggregate(micro);
}

PartitionStats partition_stats(const Partition& partition, int num_relations,
                               std::span<const std::optional<RelationId>> hidden_gold) {
  PartitionStats s;
  s.confident = static_cast<long>(partition.confident.size());
  s.ambiguous = static_cast<long>(partition.ambiguous.size());
  s.hard = static_cast<long>(partition.hard.size());
  s.histogram = candidate_size_histogram(partition, num_relations);
  s.weighted_ambiguous = weighted_ambiguous_counts(partition.ambiguous, num_relations);

  long known = 0, hits = 0;
  for (const auto& c : partition.confident) {
    if (c.index >= hidden_gold.size() || !hidden_gold[c.index]) continue;
    ++known;
    hits += *hidden_gold[c.index] == c.label;
  }
  if (known > 0) s.confident_accuracy = static_cast<double>(hits) / known;
  known = hits = 0;
  for (const auto& a : partition.ambiguous) {
    if (a.index >= hidden_gold.size() || !hidden_gold[a.index]) continue;
    ++known;
    hits += std::find(a.candidates.begin(), a.candidates.end(),
                      *hidden_gold[a.index]) != a.candidates.end();
  }
  if (known > 0) s.ambiguous_gold_coverage = static_cast<double>(hits) / known;
  return s;
}

void ExperimentResult::finalize() {
  std::vector<double> mi, ma;
  for (const auto& r : runs) {
    mi.push_back(r.report.micro_f1);
    ma.push_back(r.report.macro_f1);
  }
  if (runs.empty()) {
    micro = macro = {};
    return;
  }
  micro = aggregate(mi);
  macro = aggregate(ma);
}

std::vector<double> ExperimentResult::mean_relation_f1() const {
  if (runs.empty()) return {};
  std::vector<double> out(runs.front().report.per_relation.size(), 0.0);
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += r.report.per_relation.at(i).f1;
  }
  for (auto& v : out) v /= static_cast<double>(runs.size());
  return out;
}

std::map<int, double> ExperimentResult::mean_top_n() const {
  std::map<int, double> out;
  for (const auto& r : runs) {
    for (const auto& [n, v] : r.report.top_n) out[n] += v;
  }
  for (auto& [n, v] : out) v /= static_cast<double>(runs.size());
  return out;
}

namespace {

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json to_json(const SeedAggregate& a) {
  ordered_json j;
  j["mean"] = a.mean;
  j["std"] = optional_json(a.stddev);
  return j;
}

SeedAggregate aggregate_from_json(const json& j) {
  return {j.at("mean").get<double>(), optional_double(j.at("std"))};
}

}  // namespace

ordered_json to_json(const SeedRun& run, const RelationSchema& schema) {
  ordered_json j;
  j["seed"] = run.seed;
  j["micro_f1"] = run.report.micro_f1;
  j["macro_f1"] = run.report.macro_f1;
  ordered_json top = ordered_json::object();
  for (const auto& [n, v] : run.report.top_n) top[std::to_string(n)] = v;
  j["top_n"] = std::move(top);
  ordered_json rel = ordered_json::array();
  for (int r = 0; r < schema.size(); ++r) {
    const auto& s = run.report.per_relation.at(r);
    ordered_json e;
    e["relation"] = schema.name(r);
    e["precision"] = s.precision;
    e["recall"] = s.recall;
    e["f1"] = s.f1;
    e["support"] = run.report.support.at(r);
    rel.push_back(std::move(e));
  }
  j["per_relation"] = std::move(rel);
  j["teacher_best_epoch"] = run.teacher_epoch;
  j["student_best_epoch"] = run.student_epoch;
  if (run.partition) {
    const auto& p = *run.partition;
    ordered_json pj;
    pj["confident"] = p.confident;
    pj["ambiguous"] = p.ambiguous;
    pj["hard"] = p.hard;
    ordered_json hist = ordered_json::object();
    for (const auto& [size, count] : p.histogram) hist[std::to_string(size)] = count;
    pj["histogram"] = std::move(hist);
    pj["weighted_ambiguous"] = p.weighted_ambiguous;
    pj["confident_accuracy"] = optional_json(p.confident_accuracy);
    pj["ambiguous_gold_coverage"] = optional_json(p.ambiguous_gold_coverage);
    j["partition"] = std::move(pj);
  } else {
    j["partition"] = nullptr;
  }
  return j;
}

ordered_json to_json(const ExperimentResult& result, const RelationSchema& schema) {
  ordered_json j;
  j["system"] = result.system;
  j["eval_split"] = result.eval_split;
  j["relations"] = schema.relations();
  j["micro_f1"] = to_json(result.micro);
  j["macro_f1"] = to_json(result.macro);
  ordered_json runs = ordered_json::array();
  for (const auto& r : result.runs) runs.push_back(to_json(r, schema));
  j["runs"] = std::move(runs);
  return j;
}

ExperimentResult experiment_result_from_json(const json& j, const RelationSchema& schema) {
  try {
    if (j.at("relations").get<std::vector<std::string>>() != schema.relations()) {
      throw DataError("report relations do not match the schema");
    }
    ExperimentResult out;
    out.system = j.at("system").get<std::string>();
    out.eval_split = j.at("eval_split").get<std::string>();
    out.micro = aggregate_from_json(j.at("micro_f1"));
    out.macro = aggregate_from_json(j.at("macro_f1"));
    for (const auto& rj : j.at("runs")) {
      SeedRun run;
      run.seed = rj.at("seed").get<std::uint64_t>();
      run.report.micro_f1 = rj.at("micro_f1").get<double>();
      run.report.macro_f1 = rj.at("macro_f1").get<double>();
      for (const auto& [n, v] : rj.at("top_n").items()) {
        run.report.top_n[std::stoi(n)] = v.get<double>();
      }
      for (const auto& e : rj.at("per_relation")) {
        run.report.per_relation.push_back({e.at("precision").get<double>(),
                                           e.at("recall").get<double>(),
                                           e.at("f1").get<double>()});
        run.report.support.push_back(e.at("support").get<long>());
      }
      run.teacher_epoch = rj.at("teacher_best_epoch").get<int>();
      run.student_epoch = rj.at("student_best_epoch").get<int>();
      if (!rj.at("partition").is_null()) {
        const auto& pj = rj["partition"];
        PartitionStats p;
        p.confident = pj.at("confident").get<long>();
        p.ambiguous = pj.at("ambiguous").get<long>();
        p.hard = pj.at("hard").get<long>();
        for (const auto& [size, count] : pj.at("histogram").items()) {
          p.histogram[std::stoi(size)] = count.get<long>();
        }
        p.weighted_ambiguous = pj.at("weighted_ambiguous").get<std::vector<double>>();
        p.confident_accuracy = optional_double(pj.at("confident_accuracy"));
        p.ambiguous_gold_coverage = optional_double(pj.at("ambiguous_gold_coverage"));
        run.partition = std::move(p);
      }
      out.runs.push_back(std::move(run));
    }
    return out;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string comparison_table(std::span<const ComparisonCell> cells) {
  std::vector<std::string> systems, datasets;
  auto remember = [](std::vector<std::string>& list, const std::string& v) {
    if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
  };
  for (const auto& c : cells) {
    remember(systems, c.system);
    remember(datasets, c.dataset);
  }
  auto cell_text = [&](const std::string& sys, const std::string& ds) -> std::string {
    for (const auto& c : cells) {
      if (c.system != sys || c.dataset != ds) continue;
      char buf[64];
      if (c.micro.stddev) {
        std::snprintf(buf, sizeof buf, "%.1f +- %.1f", 100 * c.micro.mean,
                      100 * *c.micro.stddev);
      } else {
        std::snprintf(buf, sizeof buf, "%.1f", 100 * c.micro.mean);
      }
      return buf;
    }
    return "-";
  };

  std::size_t first = std::string("System").size();
  for (const auto& s : systems) first = std::max(first, s.size());
  std::vector<std::size_t> widths;
  for (const auto& d : datasets) {
    std::size_t w = d.size();
    for (const auto& s : systems) w = std::max(w, cell_text(s, d).size());
    widths.push_back(w);
  }
  std::ostringstream out;
  auto pad = [&out](const std::string& s, std::size_t w) {
    out << s << std::string(w - s.size(), ' ');
  };
  pad("System", first);
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    out << "  ";
    pad(datasets[i], widths[i]);
  }
  out << '\n';
  std::size_t total = first;
  for (auto w : widths) total += 2 + w;
  out << std::string(total, '-') << '\n';
  for (const auto& s : systems) {
    pad(s, first);
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      out << "  ";
      pad(cell_text(s, datasets[i]), widths[i]);
    }
    out << '\n';
  }
  return out.str();
}

void write_histogram_csv(std::ostream& out, const std::map<int, long>& histogram) {
  long total = 0;
  for (const auto& [_, c] : histogram) total += c;
  out << "size,count,fraction\n";
  for (const auto& [size, count] : histogram) {
    out << size << ',' << count << ','
        << format_double(total > 0 ? static_cast<double>(count) / total : 0.0) << '\n';
  }
}

void write_weighted_counts_csv(std::ostream& out, const RelationSchema& schema,
                               std::span<const double> weights,
                               std::span<const double> f1,
                               std::span<const double> baseline_f1) {
  out << "relation,weighted_ambiguous,f1,baseline_f1,delta_f1,relative_improvement\n";
  for (int r = 0; r < schema.size(); ++r) {
    out << schema.name(r) << ',' << format_double(weights[r]) << ',';
    out << (f1.empty() ? "" : format_double(f1[r])) << ',';
    if (baseline_f1.empty() || f1.empty()) {
      out << ",,\n";
      continue;
    }
    const double delta = f1[r] - baseline_f1[r];
    out << format_double(baseline_f1[r]) << ',' << format_double(delta) << ',';
    if (baseline_f1[r] > 0) out << format_double(delta / baseline_f1[r]);
    out << '\n';
  }
}

void write_top_n_csv(std::ostream& out, const std::map<int, double>& top_n,
                     const std::map<int, double>* baseline) {
  out << "n,micro_f1" << (baseline ? ",baseline_micro_f1" : "") << '\n';
  for (const auto& [n, v] : top_n) {
    out << n << ',' << format_double(v);
    if (baseline) {
      out << ',';
      if (auto it = baseline->find(n); it != baseline->end()) {
        out << format_double(it->second);
      }
    }
    out << '\n';
  }
}

}  // namespace stad
