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

#include <charconv>
#include <optional>

#include "mse/algorithms.hpp"
#include "mse/ptas.hpp"

namespace mse::alg {
namespace {

constexpr std::string_view kPtasPrefix = "ptas:k=";

std::optional<int> PtasPrecision(std::string_view name) {
  if (!name.starts_with(kPtasPrefix)) return std::nullopt;
  const std::string_view digits = name.substr(kPtasPrefix.size());
  int k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) {
    return std::nullopt;
  }
  return k;
}

Allocation Dispatch(std::string_view name, const Instance& instance,
                    const RunOptions& options) {
  if (name == "mix") return SchedMixed(instance);
  if (name == "jux") return SchedJuxtapose(instance);
  if (name == "best") return BestSchedule(instance);
  if (name == "ded-mix") return GreedyDedicated(instance, InnerAlgorithm::kMixed);
  if (name == "ded-jux") return GreedyDedicated(instance, InnerAlgorithm::kJuxtapose);
  if (name == "ded-best" || name == "ded") {
    return GreedyDedicated(instance, InnerAlgorithm::kBest);
  }
  if (name == "fill") return FillGreedy(instance);
  if (name == "g2") return GreedyFor2Types(instance, options.greedy_for_2types);
  if (name == "exact") return ExactSolve(instance, options.exact).allocation;
  if (const auto k = PtasPrecision(name)) {
    ptas::PtasLimits limits;
    limits.max_classes = options.ptas_max_classes;
    limits.max_states = options.ptas_max_states;
    return ptas::PtasOptimize(instance, *k, limits).allocation;
  }
  throw Error(ErrorCode::kPrecondition, "unknown algorithm '" + std::string(name) + "'");
}

}  // namespace

std::vector<std::string> AlgorithmNames() {
  return {"mix", "jux", "best", "ded-mix", "ded-jux", "ded-best", "ded",
          "fill", "g2", "exact", "ptas:k=<int>"};
}

bool IsKnownAlgorithm(std::string_view name) {
  for (const auto& known : AlgorithmNames()) {
    if (known == name) return !known.ends_with(">");
  }
  return PtasPrecision(name).has_value();
}

AlgorithmResult RunAlgorithm(std::string_view name, const Instance& instance,
                             const RunOptions& options) {
  if (!IsKnownAlgorithm(name)) {
    throw Error(ErrorCode::kPrecondition, "unknown algorithm '" + std::string(name) + "'");
  }
  AlgorithmResult out;
  out.algorithm_name = std::string(name);
  const auto start = std::chrono::steady_clock::now();
  out.allocation = Dispatch(name, instance, options);
  out.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  ValidateAllocation(instance, out.allocation);
  out.max_cost = MaxCost(instance, out.allocation);
  return out;
}

}  // namespace mse::alg
