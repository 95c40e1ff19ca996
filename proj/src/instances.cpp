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


#include "mse/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mse/rng.hpp"

namespace mse::inst {
namespace {

using json = nlohmann::json;

constexpr double kDropBelow = 0.005;

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> ParseDouble(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::string_view ToString(Scenario scenario) {
  switch (scenario) {
    case Scenario::kCompatible: return "compatible";
    case Scenario::kMixed: return "mixed";
    case Scenario::kIncompatible: return "incompatible";
    case Scenario::kClashing: return "clashing";
  }
  return "unknown";
}

Scenario ParseScenario(std::string_view name) {
  for (Scenario s : {Scenario::kCompatible, Scenario::kMixed, Scenario::kIncompatible,
                     Scenario::kClashing}) {
    if (ToString(s) == name) return s;
  }
  throw Error(ErrorCode::kParse, "unknown scenario \"" + std::string(name) + "\"");
}

std::vector<TraceRecord> NormalizeAndFilter(std::vector<TraceRecord> raw) {
  double max_cpu = 0, max_mem = 0;
  for (const TraceRecord& r : raw) {
    max_cpu = std::max(max_cpu, r.cpu);
    max_mem = std::max(max_mem, r.memory);
  }
  std::vector<TraceRecord> out;
  out.reserve(raw.size());
  for (const TraceRecord& r : raw) {
    const TraceRecord n{max_cpu > 0 ? r.cpu / max_cpu : 0.0,
                        max_mem > 0 ? r.memory / max_mem : 0.0};
    if (n.cpu < kDropBelow && n.memory < kDropBelow) continue;
    out.push_back(n);
  }
  return out;
}

std::vector<TraceRecord> IngestTrace(std::istream& in) {
  std::vector<TraceRecord> raw;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    const auto comma = line.find(',');
    const std::string a = Trim(std::string_view(line).substr(0, comma));
    const std::string b =
        comma == std::string::npos ? std::string() : Trim(std::string_view(line).substr(comma + 1));
    const auto cpu = ParseDouble(a);
    const auto mem = ParseDouble(b);
    if (!cpu || !mem) {
      if (row == 1 && Lower(a) == "cpu" && Lower(b) == "memory") continue;
      throw Error(ErrorCode::kParse, "trace row " + std::to_string(row) +
                                         ": expected two numbers, got \"" + line + "\"");
    }
    if (!std::isfinite(*cpu) || !std::isfinite(*mem) || *cpu < 0 || *mem < 0) {
      throw Error(ErrorCode::kParse, "trace row " + std::to_string(row) +
                                         ": values must be finite and nonnegative");
    }
    raw.push_back({*cpu, *mem});
  }
  return NormalizeAndFilter(std::move(raw));
}

TypeId AssignType(const TraceRecord& r, int types) {
  if (types == 1) return 0;
  const double log_rho = r.memory == 0.0 ? INFINITY
                         : r.cpu == 0.0  ? -INFINITY
                                         : std::log10(r.cpu / r.memory);
  std::vector<double> cuts;
  switch (types) {
    case 2: cuts = {0.0}; break;
    case 3: cuts = {-kLogRatioThreshold, kLogRatioThreshold}; break;
    case 4: cuts = {-kLogRatioThreshold, 0.0, kLogRatioThreshold}; break;
    default:
      throw Error(ErrorCode::kPrecondition, "typing supports T in {1, 2, 3, 4}");
  }
  TypeId t = 0;
  while (t < static_cast<TypeId>(cuts.size()) && log_rho > cuts[t]) ++t;
  return t;
}

Size QuantizeLoad(const TraceRecord& r) {
  const double v = std::floor(100.0 * std::max(r.cpu, r.memory) + 0.5);
  return std::max<Size>(1, static_cast<Size>(v));
}

std::vector<TypedRecord> AssignTypes(std::span<const TraceRecord> records, int types) {
  std::vector<TypedRecord> out;
  out.reserve(records.size());
  for (const TraceRecord& r : records) out.push_back({QuantizeLoad(r), AssignType(r, types)});
  return out;
}

AlphaMatrix CoefficientPreset(int types, Scenario scenario) {
  if (types == 1 && scenario != Scenario::kMixed) return AlphaMatrix(1);
  using S = Scenario;
  static const std::map<std::pair<int, S>, std::vector<std::vector<double>>> kPresets = {
      {{2, S::kCompatible}, {{1, 0.5}, {0.5, 1}}},
      {{2, S::kIncompatible}, {{1, 1.5}, {1.5, 1}}},
      {{2, S::kClashing}, {{1, 2}, {2, 1}}},
      {{3, S::kCompatible}, {{1, 0.5, 0.25}, {0.5, 1, 0.5}, {0.25, 0.5, 1}}},
      {{3, S::kMixed}, {{1, 0.5, 1.5}, {0.5, 1, 1.5}, {1.5, 1.5, 1}}},
      {{3, S::kIncompatible}, {{1, 1.3, 1.6}, {1.3, 1, 1.3}, {1.6, 1.3, 1}}},
      {{3, S::kClashing}, {{1, 2, 3}, {2, 1, 2}, {3, 2, 1}}},
      {{4, S::kCompatible},
       {{1, 0.75, 0.5, 0.25}, {0.75, 1, 0.75, 0.5}, {0.5, 0.75, 1, 0.75}, {0.25, 0.5, 0.75, 1}}},
      {{4, S::kMixed},
       {{1, 0.5, 1.5, 2}, {0.5, 1, 1.5, 2}, {1.5, 1.5, 1, 0.5}, {2, 2, 0.5, 1}}},
      {{4, S::kIncompatible},
       {{1, 1.25, 1.5, 1.75}, {1.25, 1, 1.25, 1.5}, {1.5, 1.25, 1, 1.25}, {1.75, 1.5, 1.25, 1}}},
      {{4, S::kClashing}, {{1, 2, 3, 4}, {2, 1, 2, 3}, {3, 2, 1, 2}, {4, 3, 2, 1}}},
  };
  const auto it = kPresets.find({types, scenario});
  if (it == kPresets.end()) {
    throw Error(ErrorCode::kPrecondition, "no " + std::string(ToString(scenario)) +
                                              " preset for T = " + std::to_string(types));
  }
  return AlphaMatrix(it->second);
}

std::vector<TraceRecord> SyntheticPool(std::uint64_t seed, std::size_t raw) {
  // log10 scale ~ U[-3.4, 0], which filters out roughly 45% of the records;
  // log10 cpu and memory shape factors ~ U over a window of width 1.2, the
  // CPU window nudged up so that rho > 1 holds for about half of them.
  constexpr double kScaleLow = -3.4;
  constexpr double kWidth = 1.2;
  constexpr double kCpuShift = 0.01;
  Rng rng(seed);
  std::vector<TraceRecord> records(raw);
  for (TraceRecord& r : records) {
    const double scale = rng.Uniform(kScaleLow, 0.0);
    const double cpu = rng.Uniform(kCpuShift - kWidth, kCpuShift);
    const double mem = rng.Uniform(-kWidth, 0.0);
    r.cpu = std::pow(10.0, scale + cpu);
    r.memory = std::pow(10.0, scale + mem);
  }
  return NormalizeAndFilter(std::move(records));
}

Instance SampleInstance(std::span<const TypedRecord> pool, int n, int types, int machines,
                        const AlphaMatrix& alpha, std::uint64_t seed) {
  if (pool.empty()) throw Error(ErrorCode::kSampling, "empty pool");
  if (n < 1) throw Error(ErrorCode::kSampling, "n must be >= 1");
  if (n < types) {
    throw Error(ErrorCode::kSampling, "cannot cover " + std::to_string(types) +
                                          " types with " + std::to_string(n) + " tasks");
  }
  Rng rng(seed);
  std::vector<std::size_t> picked;
  if (pool.size() >= static_cast<std::size_t>(n)) {
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (int i = 0; i < n; ++i) {
      const std::size_t j = i + rng.Below(idx.size() - i);
      std::swap(idx[i], idx[j]);
      picked.push_back(idx[i]);
    }
  } else {
    for (int i = 0; i < n; ++i) picked.push_back(rng.Below(pool.size()));
  }

  std::vector<std::vector<std::size_t>> by_type(types);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].type < 0 || pool[i].type >= types) {
      throw Error(ErrorCode::kSampling, "pool record with type outside [0, T)");
    }
    by_type[pool[i].type].push_back(i);
  }
  std::vector<Task> tasks;
  for (std::size_t i : picked) tasks.push_back({pool[i].load, pool[i].type});

  for (TypeId missing = 0; missing < types; ++missing) {
    std::vector<int> count(types, 0);
    for (const Task& t : tasks) ++count[t.type];
    if (count[missing] > 0) continue;
    if (by_type[missing].empty()) {
      throw Error(ErrorCode::kSampling,
                  "pool has no task of type " + std::to_string(missing));
    }
    const TypeId common = static_cast<TypeId>(
        std::max_element(count.begin(), count.end()) - count.begin());
    for (std::size_t i = tasks.size(); i-- > 0;) {
      if (tasks[i].type == common) {
        tasks.erase(tasks.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
    const auto& candidates = by_type[missing];
    const TypedRecord& r = pool[candidates[rng.Below(candidates.size())]];
    tasks.push_back({r.load, r.type});
  }
  return Instance(std::move(tasks), alpha, machines);
}

GridSpec GridSpec::ReferenceSmall() {
  GridSpec g;
  g.size_class = "small";
  g.n = {10, 20, 50};
  g.m = {2, 3, 5, 10};
  g.types = {2, 3, 4};
  g.scenarios = {Scenario::kCompatible, Scenario::kMixed, Scenario::kIncompatible,
                 Scenario::kClashing};
  return g;
}

GridSpec GridSpec::ReferenceLarge() {
  GridSpec g = ReferenceSmall();
  g.size_class = "large";
  g.n = {200, 500, 1000};
  g.m = {20, 50, 100};
  return g;
}

nlohmann::ordered_json GridSpecToJson(const GridSpec& spec) {
  nlohmann::ordered_json j;
  j["size_class"] = spec.size_class;
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["T"] = spec.types;
  std::vector<std::string> names;
  for (Scenario s : spec.scenarios) names.emplace_back(ToString(s));
  j["scenarios"] = names;
  j["repetitions"] = spec.repetitions;
  j["seed"] = spec.seed;
  j["pool_seed"] = spec.pool_seed;
  if (spec.trace_path) j["trace"] = *spec.trace_path;
  return j;
}

GridSpec GridSpecFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "grid spec: expected an object");
  GridSpec g;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "size_class") g.size_class = value.get<std::string>();
      else if (key == "n") g.n = value.get<std::vector<int>>();
      else if (key == "m") g.m = value.get<std::vector<int>>();
      else if (key == "T") g.types = value.get<std::vector<int>>();
      else if (key == "scenarios") {
        g.scenarios.clear();
        for (const auto& s : value) g.scenarios.push_back(ParseScenario(s.get<std::string>()));
      } else if (key == "repetitions") g.repetitions = value.get<int>();
      else if (key == "seed") g.seed = value.get<std::uint64_t>();
      else if (key == "pool_seed") g.pool_seed = value.get<std::uint64_t>();
      else if (key == "trace") g.trace_path = value.get<std::string>();
      else throw Error(ErrorCode::kParse, "grid spec: unknown field \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("grid spec: ") + e.what());
  }
  if (g.n.empty() || g.m.empty() || g.types.empty() || g.scenarios.empty()) {
    throw Error(ErrorCode::kParse, "grid spec: n, m, T and scenarios must be nonempty");
  }
  if (g.repetitions < 1) throw Error(ErrorCode::kParse, "grid spec: repetitions must be >= 1");
  for (int v : g.n) if (v < 1) throw Error(ErrorCode::kParse, "grid spec: n must be >= 1");
  for (int v : g.m) if (v < 1) throw Error(ErrorCode::kParse, "grid spec: m must be >= 1");
  for (int v : g.types) {
    if (v < 1 || v > 4) throw Error(ErrorCode::kParse, "grid spec: T must be in [1, 4]");
  }
  return g;
}

bool IsFeasibleCombination(Scenario scenario, int types, int machines) {
  switch (scenario) {
    case Scenario::kClashing:
    case Scenario::kIncompatible: return types <= machines;
    case Scenario::kMixed: return types >= 3;
    case Scenario::kCompatible: return true;
  }
  return false;
}

std::vector<InstanceDescriptor> ExperimentGrid(std::span<const GridSpec> specs) {
  std::vector<InstanceDescriptor> out;
  int cell = 0;
  for (const GridSpec& g : specs) {
    for (Scenario s : g.scenarios) {
      for (int t : g.types) {
        for (int n : g.n) {
          for (int m : g.m) {
            if (!IsFeasibleCombination(s, t, m)) continue;
            const std::uint64_t cell_seed = SplitMix64(g.seed ^ SplitMix64(cell));
            for (int rep = 0; rep < g.repetitions; ++rep) {
              out.push_back({cell, g.size_class, s, t, n, m, rep,
                             SplitMix64(cell_seed + static_cast<std::uint64_t>(rep))});
            }
            ++cell;
          }
        }
      }
    }
  }
  return out;
}

PoolCache::PoolCache(std::vector<TraceRecord> records) : records_(std::move(records)) {
  for (int t = 1; t <= 4; ++t) typed_.push_back(AssignTypes(records_, t));
}

const std::vector<TypedRecord>& PoolCache::Typed(int types) const {
  if (types < 1 || types > 4) {
    throw Error(ErrorCode::kPrecondition, "typing supports T in {1, 2, 3, 4}");
  }
  return typed_[types - 1];
}

std::vector<TraceRecord> LoadPool(const GridSpec& spec) {
  if (!spec.trace_path) return SyntheticPool(spec.pool_seed);
  std::ifstream in(*spec.trace_path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open trace " + *spec.trace_path);
  return IngestTrace(in);
}

Instance Materialize(const InstanceDescriptor& d, const PoolCache& pool) {
  return SampleInstance(pool.Typed(d.types), d.n, d.types, d.m,
                        CoefficientPreset(d.types, d.scenario), d.seed);
}

Instance PartitionHardInstance(std::span<const Size> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidInstance, "partition: no values");
  const int n = static_cast<int>(values.size());
  AlphaMatrix alpha(n);
  std::vector<Task> tasks;
  for (int i = 0; i < n; ++i) {
    if (values[i] < 1) throw Error(ErrorCode::kInvalidInstance, "partition: values must be >= 1");
    for (int j = 0; j < n; ++j) alpha.set(i, j, static_cast<double>(values[i]));
    tasks.push_back({1, i});
  }
  return Instance(std::move(tasks), std::move(alpha), 2);
}

}  // namespace mse::inst
