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


// Experiment runner: scenario-specific algorithm sets over generated or
// stored instances, normalization by lower bounds, percentile summaries.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mse/algorithms.hpp"
#include "mse/bounds.hpp"
#include "mse/instances.hpp"

namespace mse::harness {

struct RunConfig {
  std::vector<inst::GridSpec> grids;
  std::vector<std::filesystem::path> instance_files;
  std::vector<std::string> algorithms;  // empty: per-scenario defaults
  std::optional<std::uint64_t> seed;    // replaces every grid seed
  int jobs = 1;
  int oracle_limit = 10;  // exact runs when n <= oracle_limit
  bool timing = false;    // adds the wall_time column
  alg::RunOptions run_options;
};

// {"grid": spec | [spec...] | "reference" | "reference-small" | "reference-large",
//  "instances": [path...], "algorithms": [name...], "seed": int, "jobs": int,
//  "oracle_limit": int, "timing": bool,
//  "ptas": {"max_classes": int, "max_states": int},
//  "g2_overflow": "last" | "first"}
// Relative paths resolve against `base_dir`. Throws Error(kParse).
RunConfig RunConfigFromJson(const nlohmann::json& j,
                            const std::filesystem::path& base_dir = {});

// A grid spec object, an array of them, or "reference" | "reference-small" |
// "reference-large".
std::vector<inst::GridSpec> GridsFromJson(const nlohmann::json& j);

struct ResultRow {
  int cell_id = 0;
  std::uint64_t seed = 0;
  std::string scenario;
  std::string size_class;
  int types = 0;
  int n = 0;
  int m = 0;
  std::string algorithm;
  std::string status = "ok";  // ok | skipped
  double max_cost = 0;
  double lower_bound = 0;
  std::string bound_source;
  double normalized_cost = 0;
  double wall_time_ms = 0;
  bool lp_failed = false;
};

// fill everywhere; mix/jux/best on compatible; mix/g2/ded on incompatible;
// ded on clashing; mix/g2/ded-jux/ded-mix/ded-best on mixed; exact when
// n <= oracle_limit and it fits the exact solver limits.
std::vector<std::string> AlgorithmsFor(inst::Scenario scenario, int n, int m,
                                       int oracle_limit,
                                       const alg::ExactLimits& limits = {});

// Scenario implied by the off-diagonal coefficients.
inst::Scenario InferScenario(const AlphaMatrix& alpha);

// Fills lower_bound, bound_source, lp_failed and normalized_cost.
ResultRow Normalize(ResultRow row, const bounds::BoundReport& bounds);

struct RunReport {
  std::vector<ResultRow> rows;  // sorted by (cell_id, seed, algorithm)
  std::vector<std::string> violations;
};

// Throws Error for configuration problems; algorithm precondition and limit
// errors become skipped rows.
RunReport RunExperiment(const RunConfig& config);

struct SummaryStats {
  std::string scenario;
  std::string size_class;
  std::string algorithm;
  std::size_t count = 0;
  double median = 0, p25 = 0, p75 = 0, p5 = 0, p95 = 0;
  std::size_t outliers = 0;  // values outside [p5, p95]
};

// Linear interpolation between closest ranks; `sorted` nonempty, ascending.
double Percentile(const std::vector<double>& sorted, double q);

// Groups (scenario, size, algorithm) over rows with status ok, ordered by key.
std::vector<SummaryStats> Aggregate(const std::vector<ResultRow>& rows);

std::string RowsToCsv(const std::vector<ResultRow>& rows, bool timing = false);
nlohmann::ordered_json StatsToJson(const std::vector<SummaryStats>& stats);

}  // namespace mse::harness
