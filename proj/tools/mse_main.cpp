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


// mse: instance generation, experiment runs, bounds and single solves.
//
// Exit codes: 0 success, 2 configuration or input error, 3 invariant
// violation detected during a run.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mse/algorithms.hpp"
#include "mse/bounds.hpp"
#include "mse/harness.hpp"
#include "mse/instances.hpp"
#include "mse/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kConfigError = 2;
constexpr int kInvariantViolation = 3;

json ReadJsonFile(const fs::path& path) {
  try {
    return json::parse(mse::ReadTextFile(path));
  } catch (const json::exception& e) {
    throw mse::Error(mse::ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

int Gen(const fs::path& spec_path, const fs::path& out_dir, std::optional<std::uint64_t> seed) {
  std::vector<mse::inst::GridSpec> grids = mse::harness::GridsFromJson(ReadJsonFile(spec_path));
  fs::create_directories(out_dir);
  int offset = 0;
  std::size_t written = 0;
  for (auto& g : grids) {
    if (seed) g.seed = *seed;
    if (g.trace_path && fs::path(*g.trace_path).is_relative()) {
      g.trace_path = (spec_path.parent_path() / *g.trace_path).string();
    }
    const mse::inst::PoolCache pool(mse::inst::LoadPool(g));
    int max_cell = -1;
    for (auto d : mse::inst::ExperimentGrid(std::span<const mse::inst::GridSpec>(&g, 1))) {
      d.cell_id += offset;
      max_cell = std::max(max_cell, d.cell_id);
      const mse::Instance instance = mse::inst::Materialize(d, pool);
      mse::InstanceMetadata meta{std::string(mse::inst::ToString(d.scenario)), d.types, d.n,
                                 d.m, d.seed, d.cell_id};
      char name[64];
      std::snprintf(name, sizeof name, "cell%04d_rep%02d.json", d.cell_id, d.repetition);
      mse::WriteTextFile(out_dir / name, mse::InstanceToJson(instance, meta));
      ++written;
    }
    offset = max_cell + 1;
  }
  std::cout << "wrote " << written << " instances to " << out_dir.string() << "\n";
  return 0;
}

int Run(const fs::path& config_path, const std::string& out_csv, const std::string& out_stats,
        std::optional<std::uint64_t> seed, std::optional<int> jobs,
        std::optional<int> oracle_limit, bool timing) {
  mse::harness::RunConfig config =
      mse::harness::RunConfigFromJson(ReadJsonFile(config_path), config_path.parent_path());
  if (seed) config.seed = seed;
  if (jobs) config.jobs = *jobs;
  if (oracle_limit) config.oracle_limit = *oracle_limit;
  if (timing) config.timing = true;
  if (config.jobs < 1) throw mse::Error(mse::ErrorCode::kParse, "--jobs must be >= 1");

  const mse::harness::RunReport report = mse::harness::RunExperiment(config);
  const std::string csv = mse::harness::RowsToCsv(report.rows, config.timing);
  if (out_csv.empty()) {
    std::cout << csv;
  } else {
    mse::WriteTextFile(out_csv, csv);
  }
  if (!out_stats.empty()) {
    mse::WriteTextFile(out_stats,
                       mse::harness::StatsToJson(mse::harness::Aggregate(report.rows)).dump(2) +
                           "\n");
  }
  for (const auto& v : report.violations) std::cerr << "invariant violation: " << v << "\n";
  return report.violations.empty() ? 0 : kInvariantViolation;
}

int Bound(const fs::path& instance_path) {
  const mse::InstanceDocument doc = mse::ReadInstanceFile(instance_path);
  const mse::bounds::BoundReport b = mse::bounds::ComputeBounds(doc.instance);
  ordered_json j;
  j["pmax"] = b.pmax_bound;
  j["avg_load"] = b.avg_load_bound ? json(*b.avg_load_bound) : json(nullptr);
  j["lp"] = b.lp_bound ? json(*b.lp_bound) : json(nullptr);
  j["lp_clusters"] = b.cluster_bound ? json(*b.cluster_bound) : json(nullptr);
  j["lp_failed"] = b.lp_failed;
  j["chosen"] = b.chosen;
  j["source"] = b.source;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int Solve(const fs::path& instance_path, const std::string& alg, const std::string& out) {
  const mse::InstanceDocument doc = mse::ReadInstanceFile(instance_path);
  const mse::alg::AlgorithmResult r = mse::alg::RunAlgorithm(alg, doc.instance);
  ordered_json j;
  j["algorithm"] = r.algorithm_name;
  j["max_cost"] = r.max_cost;
  j["assignment"] = r.allocation.assignment;
  if (!out.empty()) mse::WriteTextFile(out, mse::AllocationToJson(r.allocation));
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colocation with side effects: generators, solvers and experiment runner"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<int> jobs, oracle_limit;
  std::string spec, out, config, out_csv, out_stats, instance, alg = "best";
  bool timing = false;

  auto* gen = app.add_subcommand("gen", "write the instances of a grid spec as JSON files");
  gen->add_option("--spec", spec, "grid spec JSON")->required();
  gen->add_option("--out", out, "output directory")->required();
  gen->add_option("--seed", seed, "master seed overriding the spec");

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", config, "run config JSON")->required();
  run->add_option("--out", out_csv, "result CSV (stdout when omitted)");
  run->add_option("--stats", out_stats, "summary statistics JSON");
  run->add_option("--seed", seed, "master seed overriding the grid seeds");
  run->add_option("--jobs", jobs, "worker threads");
  run->add_option("--oracle-limit", oracle_limit, "largest n that also runs the exact solver");
  run->add_flag("--timing", timing, "add a wall_time column (ms)");

  auto* bound = app.add_subcommand("bound", "print the lower bounds of an instance");
  bound->add_option("--instance", instance, "instance JSON")->required();

  auto* solve = app.add_subcommand("solve", "run one algorithm on an instance");
  solve->add_option("--instance", instance, "instance JSON")->required();
  solve->add_option("--alg", alg, "mix, jux, best, ded, ded-mix, ded-jux, ded-best, fill, g2, "
                                  "exact or ptas:k=<int>");
  solve->add_option("--out", out, "allocation JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) return Gen(spec, out, seed);
    if (*run) return Run(config, out_csv, out_stats, seed, jobs, oracle_limit, timing);
    if (*bound) return Bound(instance);
    if (*solve) return Solve(instance, alg, out);
  } catch (const mse::Error& e) {
    std::cerr << "error (" << mse::ToString(e.code()) << "): " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
