// Copyright 2026 The MSE Authors
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


#include "mse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "mse/io.hpp"

namespace mse::harness {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kTolerance = 1e-9;

struct WorkItem {
  inst::InstanceDescriptor descriptor;
  std::optional<std::filesystem::path> file;
};

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double Round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string SizeClassOf(int n) { return n <= 100 ? "small" : "large"; }

void RunOne(const WorkItem& item, const Instance& instance, inst::Scenario scenario,
            const RunConfig& config, std::vector<ResultRow>& rows,
            std::vector<std::string>& violations) {
  const inst::InstanceDescriptor& d = item.descriptor;
  const bounds::BoundReport bounds = bounds::ComputeBounds(instance);
  const std::vector<std::string> names =
      config.algorithms.empty()
          ? AlgorithmsFor(scenario, static_cast<int>(instance.task_count()),
                          instance.machines(), config.oracle_limit, config.run_options.exact)
          : config.algorithms;
  for (const std::string& name : names) {
    ResultRow row;
    row.cell_id = d.cell_id;
    row.seed = d.seed;
    row.scenario = std::string(inst::ToString(scenario));
    row.size_class = d.size_class;
    row.types = instance.type_count();
    row.n = static_cast<int>(instance.task_count());
    row.m = instance.machines();
    row.algorithm = name;
    try {
      const alg::AlgorithmResult result = alg::RunAlgorithm(name, instance, config.run_options);
      row.max_cost = result.max_cost;
      row.wall_time_ms = std::chrono::duration<double, std::milli>(result.wall_time).count();
      row = Normalize(std::move(row), bounds);
      if (row.normalized_cost < 1.0 - kTolerance) {
        violations.push_back("cell " + std::to_string(d.cell_id) + " seed " +
                             std::to_string(d.seed) + " " + name + ": max cost " +
                             Fixed(row.max_cost) + " below lower bound " +
                             Fixed(row.lower_bound) + " (" + row.bound_source + ")");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kPrecondition || e.code() == ErrorCode::kLimitExceeded) {
        row.status = "skipped";
        row = Normalize(std::move(row), bounds);
        row.max_cost = 0;
        row.normalized_cost = 0;
      } else if (e.code() == ErrorCode::kInvalidAllocation) {
        violations.push_back("cell " + std::to_string(d.cell_id) + " " + name + ": " + e.what());
        row.status = "invalid";
      } else {
        throw;
      }
    }
    rows.push_back(std::move(row));
  }
}

}  // namespace

std::vector<inst::GridSpec> GridsFromJson(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "reference") return {inst::GridSpec::ReferenceSmall(), inst::GridSpec::ReferenceLarge()};
    if (name == "reference-small") return {inst::GridSpec::ReferenceSmall()};
    if (name == "reference-large") return {inst::GridSpec::ReferenceLarge()};
    throw Error(ErrorCode::kParse, "run config: unknown grid preset \"" + name + "\"");
  }
  if (j.is_array()) {
    std::vector<inst::GridSpec> out;
    for (const auto& g : j) out.push_back(inst::GridSpecFromJson(g));
    return out;
  }
  return {inst::GridSpecFromJson(j)};
}

RunConfig RunConfigFromJson(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "run config: expected an object");
  RunConfig c;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "grid") {
        c.grids = GridsFromJson(value);
        for (auto& g : c.grids) {
          if (g.trace_path) g.trace_path = resolve(*g.trace_path).string();
        }
      } else if (key == "instances") {
        for (const auto& p : value) c.instance_files.push_back(resolve(p.get<std::string>()));
      } else if (key == "algorithms") {
        c.algorithms = value.get<std::vector<std::string>>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "jobs") {
        c.jobs = value.get<int>();
      } else if (key == "oracle_limit") {
        c.oracle_limit = value.get<int>();
      } else if (key == "timing") {
        c.timing = value.get<bool>();
      } else if (key == "ptas") {
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "max_classes") c.run_options.ptas_max_classes = pv.get<int>();
          else if (pk == "max_states") c.run_options.ptas_max_states = pv.get<std::size_t>();
          else throw Error(ErrorCode::kParse, "run config: unknown ptas field \"" + pk + "\"");
        }
      } else if (key == "g2_overflow") {
        const auto v = value.get<std::string>();
        if (v == "last") {
          c.run_options.greedy_for_2types.overflow = alg::OverflowPolicy::kLastMachineOfFirstGroup;
        } else if (v == "first") {
          c.run_options.greedy_for_2types.overflow = alg::OverflowPolicy::kFirstMachineOfFirstGroup;
        } else {
          throw Error(ErrorCode::kParse, "run config: g2_overflow must be \"last\" or \"first\"");
        }
      } else {
        throw Error(ErrorCode::kParse, "run config: unknown field \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("run config: ") + e.what());
  }
  if (c.grids.empty() && c.instance_files.empty()) {
    throw Error(ErrorCode::kParse, "run config: needs \"grid\" or \"instances\"");
  }
  for (const auto& name : c.algorithms) {
    if (!alg::IsKnownAlgorithm(name)) {
      throw Error(ErrorCode::kParse, "run config: unknown algorithm \"" + name + "\"");
    }
  }
  if (c.jobs < 1) throw Error(ErrorCode::kParse, "run config: jobs must be >= 1");
  return c;
}

std::vector<std::string> AlgorithmsFor(inst::Scenario scenario, int n, int m,
                                       int oracle_limit, const alg::ExactLimits& limits) {
  std::vector<std::string> out;
  switch (scenario) {
    case inst::Scenario::kCompatible: out = {"fill", "mix", "jux", "best"}; break;
    case inst::Scenario::kIncompatible: out = {"fill", "mix", "g2", "ded"}; break;
    case inst::Scenario::kClashing: out = {"fill", "ded"}; break;
    case inst::Scenario::kMixed:
      out = {"fill", "mix", "g2", "ded-jux", "ded-mix", "ded-best"};
      break;
  }
  if (n <= oracle_limit && n <= limits.max_tasks && std::min(n, m) <= limits.max_machines) {
    out.push_back("exact");
  }
  return out;
}

inst::Scenario InferScenario(const AlphaMatrix& alpha) {
  bool all_compatible = true, all_above = true, all_clash = true;
  for (int a = 0; a < alpha.type_count(); ++a) {
    for (int b = 0; b < alpha.type_count(); ++b) {
      if (a == b) continue;
      const double v = alpha.at(a, b);
      all_compatible = all_compatible && v <= 1.0;
      all_above = all_above && v > 1.0;
      all_clash = all_clash && v >= 2.0;
    }
  }
  if (all_compatible) return inst::Scenario::kCompatible;
  if (all_clash) return inst::Scenario::kClashing;
  if (all_above) return inst::Scenario::kIncompatible;
  return inst::Scenario::kMixed;
}

ResultRow Normalize(ResultRow row, const bounds::BoundReport& b) {
  row.lower_bound = b.chosen;
  row.bound_source = b.source;
  row.lp_failed = b.lp_failed;
  row.normalized_cost = b.chosen > 0 ? row.max_cost / b.chosen : 0.0;
  return row;
}

RunReport RunExperiment(const RunConfig& config) {
  std::vector<WorkItem> work;
  std::vector<std::unique_ptr<inst::PoolCache>> pools;
  std::vector<std::size_t> pool_of;  // per work item, grid items only

  std::vector<inst::GridSpec> grids = config.grids;
  if (config.seed) {
    for (auto& g : grids) g.seed = *config.seed;
  }
  // One cell-id space across all grids; pools are shared by identical sources.
  std::map<std::pair<std::uint64_t, std::string>, std::size_t> pool_index;
  int cell_offset = 0;
  for (const auto& g : grids) {
    const auto key = std::make_pair(g.pool_seed, g.trace_path.value_or(""));
    auto it = pool_index.find(key);
    if (it == pool_index.end()) {
      pools.push_back(std::make_unique<inst::PoolCache>(inst::LoadPool(g)));
      it = pool_index.emplace(key, pools.size() - 1).first;
    }
    const std::vector<inst::InstanceDescriptor> cells =
        inst::ExperimentGrid(std::span<const inst::GridSpec>(&g, 1));
    int max_cell = -1;
    for (auto d : cells) {
      d.cell_id += cell_offset;
      max_cell = std::max(max_cell, d.cell_id);
      work.push_back({d, std::nullopt});
      pool_of.push_back(it->second);
    }
    cell_offset = max_cell + 1;
  }
  for (std::size_t f = 0; f < config.instance_files.size(); ++f) {
    WorkItem item;
    item.file = config.instance_files[f];
    work.push_back(item);
    pool_of.push_back(0);
  }

  std::vector<std::vector<ResultRow>> rows(work.size());
  std::vector<std::vector<std::string>> violations(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      try {
        WorkItem item = work[i];
        if (item.file) {
          const InstanceDocument doc = ReadInstanceFile(*item.file);
          inst::Scenario scenario = InferScenario(doc.instance.alpha());
          auto& d = item.descriptor;
          d.cell_id = cell_offset + static_cast<int>(i);
          d.n = static_cast<int>(doc.instance.task_count());
          d.size_class = SizeClassOf(d.n);
          if (doc.metadata) {
            if (!doc.metadata->scenario.empty()) {
              scenario = inst::ParseScenario(doc.metadata->scenario);
            }
            d.cell_id = doc.metadata->cell_id;
            d.seed = doc.metadata->seed;
          }
          RunOne(item, doc.instance, scenario, config, rows[i], violations[i]);
        } else {
          const Instance instance = inst::Materialize(item.descriptor, *pools[pool_of[i]]);
          RunOne(item, instance, item.descriptor.scenario, config, rows[i], violations[i]);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(work.size());
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunReport report;
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (auto& r : rows[i]) report.rows.push_back(std::move(r));
    for (auto& v : violations[i]) report.violations.push_back(std::move(v));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     return std::tie(a.cell_id, a.seed, a.algorithm) <
                            std::tie(b.cell_id, b.seed, b.algorithm);
                   });
  return report;
}

double Percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::kPrecondition, "percentile of an empty set");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<SummaryStats> Aggregate(const std::vector<ResultRow>& rows) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> groups;
  for (const ResultRow& r : rows) {
    if (r.status != "ok") continue;
    groups[{r.scenario, r.size_class, r.algorithm}].push_back(r.normalized_cost);
  }
  std::vector<SummaryStats> out;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    SummaryStats s;
    std::tie(s.scenario, s.size_class, s.algorithm) = key;
    s.count = values.size();
    s.median = Percentile(values, 0.5);
    s.p25 = Percentile(values, 0.25);
    s.p75 = Percentile(values, 0.75);
    s.p5 = Percentile(values, 0.05);
    s.p95 = Percentile(values, 0.95);
    s.outliers = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [&](double v) { return v < s.p5 || v > s.p95; }));
    out.push_back(std::move(s));
  }
  return out;
}

std::string RowsToCsv(const std::vector<ResultRow>& rows, bool timing) {
  std::ostringstream out;
  out << "cell_id,seed,scenario,size,T,n,m,algorithm,status,max_cost,lower_bound,"
         "bound_source,normalized_cost,";
  if (timing) out << "wall_time,";
  out << "lp_failed\n";
  for (const ResultRow& r : rows) {
    const bool ok = r.status == "ok";
    out << r.cell_id << ',' << r.seed << ',' << r.scenario << ',' << r.size_class << ','
        << r.types << ',' << r.n << ',' << r.m << ',' << r.algorithm << ',' << r.status << ','
        << (ok ? Fixed(r.max_cost) : "") << ',' << Fixed(r.lower_bound) << ','
        << r.bound_source << ',' << (ok ? Fixed(r.normalized_cost) : "") << ',';
    if (timing) out << (ok ? Fixed(r.wall_time_ms) : "") << ',';
    out << (r.lp_failed ? "true" : "false") << '\n';
  }
  return out.str();
}

ordered_json StatsToJson(const std::vector<SummaryStats>& stats) {
  ordered_json groups = ordered_json::array();
  for (const SummaryStats& s : stats) {
    ordered_json g;
    g["scenario"] = s.scenario;
    g["size"] = s.size_class;
    g["algorithm"] = s.algorithm;
    g["count"] = s.count;
    g["median"] = Round6(s.median);
    g["p25"] = Round6(s.p25);
    g["p75"] = Round6(s.p75);
    g["p5"] = Round6(s.p5);
    g["p95"] = Round6(s.p95);
    g["outliers"] = s.outliers;
    groups.push_back(std::move(g));
  }
  ordered_json out;
  out["groups"] = std::move(groups);
  return out;
}

}  // namespace mse::harness
