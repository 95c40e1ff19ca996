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


// Instance generation: trace ingestion, typing by CPU/memory ratio, load
// quantization, coefficient presets, seeded sampling and the experiment grid.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mse/core.hpp"

namespace mse::inst {

struct TraceRecord {
  double cpu = 0;
  double memory = 0;
};

struct TypedRecord {
  Size load = 1;
  TypeId type = 0;
};

enum class Scenario { kCompatible, kMixed, kIncompatible, kClashing };

std::string_view ToString(Scenario scenario);
// Throws Error(kParse) on an unknown name.
Scenario ParseScenario(std::string_view name);

// Scales both columns by their maxima and drops records below 0.005 in both.
std::vector<TraceRecord> NormalizeAndFilter(std::vector<TraceRecord> raw);

// Reads "cpu,memory" rows; a header line is accepted as the first row only.
// Returns normalized, filtered records. Throws Error(kParse) naming the row.
std::vector<TraceRecord> IngestTrace(std::istream& in);

// Ratio rho = cpu / memory (memory 0 counts as +inf), thresholds on log10 rho:
//   T=2: rho <= 1 | rho > 1
//   T=3: <= -0.66 | <= 0.66 | above
//   T=4: <= -0.66 | <= 0 | <= 0.66 | above
inline constexpr double kLogRatioThreshold = 0.66;
TypeId AssignType(const TraceRecord& record, int types);

// round(100 * max(cpu, memory)) half up, at least 1.
Size QuantizeLoad(const TraceRecord& record);

std::vector<TypedRecord> AssignTypes(std::span<const TraceRecord> records, int types);

// Symmetric unit-diagonal matrices for T in {2, 3, 4}; T = 1 gives [[1]].
// Mixed needs T >= 3 (Error(kPrecondition) otherwise).
AlphaMatrix CoefficientPreset(int types, Scenario scenario);

// Synthetic stand-in for the cluster trace: `raw` records with a log-uniform
// scale and log-uniform CPU and memory shape factors, already normalized and
// filtered. Calibrated so that T=2 typing splits the pool roughly in half and
// the T=3 extreme types hold about a tenth each.
std::vector<TraceRecord> SyntheticPool(std::uint64_t seed, std::size_t raw = 10'000);

// n tasks drawn uniformly without replacement (with replacement when the pool
// is smaller than n). While a type is missing, the highest-index task of the
// most common type is dropped and a uniformly drawn pool task of the missing
// type is appended. Throws Error(kSampling) when the pool lacks a type.
Instance SampleInstance(std::span<const TypedRecord> pool, int n, int types,
                        int machines, const AlphaMatrix& alpha, std::uint64_t seed);

struct GridSpec {
  std::string size_class = "small";
  std::vector<int> n;
  std::vector<int> m;
  std::vector<int> types;
  std::vector<Scenario> scenarios;
  int repetitions = 30;
  std::uint64_t seed = 1;
  std::uint64_t pool_seed = 1;           // synthetic pool
  std::optional<std::string> trace_path;  // CSV trace instead of the pool

  static GridSpec ReferenceSmall();
  static GridSpec ReferenceLarge();
};

nlohmann::ordered_json GridSpecToJson(const GridSpec& spec);
// Throws Error(kParse) on unknown keys or malformed values.
GridSpec GridSpecFromJson(const nlohmann::json& j);

// Clashing and incompatible need T <= m; mixed needs T >= 3.
bool IsFeasibleCombination(Scenario scenario, int types, int machines);

struct InstanceDescriptor {
  int cell_id = 0;
  std::string size_class;
  Scenario scenario = Scenario::kCompatible;
  int types = 2;
  int n = 0;
  int m = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
};

// Cells in the order size class (spec order), scenario, T, n, m; cell ids
// are consecutive across all specs.
std::vector<InstanceDescriptor> ExperimentGrid(std::span<const GridSpec> specs);

// Typed views of one record pool for T = 1..4. Read-only after construction.
class PoolCache {
 public:
  explicit PoolCache(std::vector<TraceRecord> records);
  const std::vector<TypedRecord>& Typed(int types) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<TraceRecord> records_;
  std::vector<std::vector<TypedRecord>> typed_;
};

std::vector<TraceRecord> LoadPool(const GridSpec& spec);

Instance Materialize(const InstanceDescriptor& d, const PoolCache& pool);

// Partition reduction: unit tasks, one type per value, every coefficient in
// row i equal to values[i], two machines.
Instance PartitionHardInstance(std::span<const Size> values);

}  // namespace mse::inst
