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

// Polynomial-time approximation scheme for a constant number of types.
//
// For a target cost C and precision k the decision procedure either returns
// an allocation of cost at most C (1 + 1/k) or certifies that no allocation
// of cost at most C exists:
//
//   1. With G = ceil(gamma * k), gamma = T * alpha_max * (2 + 1 / min_t alpha[t][t]),
//      tasks of size >= C/G are long and are rounded down to a multiple of
//      C/G^2 (their "size class"); the short load of every type is glued
//      into containers of size C/G, the last one possibly shorter.
//   2. min(m, #containers) containers are removed per type, the short one
//      first, so every remaining container is full.
//   3. A dynamic program over count vectors finds the minimum number of
//      machines for the rounded instance, using only single-machine
//      configurations whose every present type has cost <= C.
//   4. Removed containers are added back (at most one per type and machine),
//      containers are replaced by real short tasks, long tasks get their
//      original sizes back.
//
// Class boundaries and configuration feasibility are decided in exact
// rational arithmetic. Coefficients are read as the closest fraction with a
// denominator of at most 10^6, which is exact for decimal inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mse/core.hpp"
#include "mse/rational.hpp"

namespace mse::ptas {

struct PtasParams {
  Rational target_cost;  // C
  int precision = 1;     // k
  Rational gamma;
  std::int64_t scale = 1;  // G = ceil(gamma * k)

  Rational long_threshold() const;  // C / G
  Rational class_width() const;     // C / G^2

  // Throws Error(kPrecondition) when k < 1 or C <= 0.
  static PtasParams For(const Instance& instance, const Rational& target_cost,
                        int precision);
};

Rational Gamma(const AlphaMatrix& alpha);

struct PtasLimits {
  std::int64_t max_classes = 400;          // refuse when G^2 exceeds this
  std::size_t max_states = 4'000'000;      // DP table entries
  std::uint64_t max_work = 2'000'000'000;  // states x configurations scanned
};

// One dimension of the DP count vector.
struct ItemKind {
  TypeId type = 0;
  std::int64_t size_class = 0;  // rounded size = size_class * C / G^2
  bool container = false;

  friend bool operator==(const ItemKind&, const ItemKind&) = default;
};

struct SizeClassConfig {
  std::vector<ItemKind> kinds;
  std::vector<int> counts;  // per kind
};

struct RoundedInstance {
  SizeClassConfig config;
  // Original long task ids for every non-container kind (empty for
  // container kinds), in ascending id order.
  std::vector<std::vector<std::size_t>> long_tasks;
  // Short task ids per type, nonincreasing size.
  std::vector<std::vector<std::size_t>> short_tasks;
  std::vector<Size> short_load;              // W_s per type
  std::vector<int> container_count;          // before removal, per type
  std::vector<int> removed_containers;       // per type
};

RoundedInstance BuildRoundedInstance(const Instance& instance,
                                     const PtasParams& params);

using MachineConfig = std::vector<int>;  // counts per kind

// Every type present in `config` has cost <= C on a single machine.
bool IsFeasibleMachine(const SizeClassConfig& shape, const MachineConfig& config,
                       const AlphaMatrix& alpha, const PtasParams& params);

struct DpSolution {
  std::optional<int> machines;  // nullopt: some item fits on no machine
  std::vector<MachineConfig> machine_configs;
  std::size_t states = 0;
  std::size_t configurations = 0;
};

// Exact minimum machine count of the rounded instance. Throws
// Error(kLimitExceeded) when the state space exceeds `limits`.
DpSolution DpMinMachines(const SizeClassConfig& config, const AlphaMatrix& alpha,
                         const PtasParams& params, const PtasLimits& limits = {});

// Decision procedure for a fixed target cost.
std::optional<Allocation> PtasFeasible(const Instance& instance,
                                       const PtasParams& params,
                                       const PtasLimits& limits = {});

struct PtasResult {
  Allocation allocation;
  Rational target_cost;  // smallest feasible C probed
  double max_cost = 0;
  int probes = 0;
};

// Bisection over C on the grid of multiples of 2^-32 in
// [pmax * min alpha[t][t], W * alpha_max]; the result has cost at most
// (1 + 1/k) (OPT + 2^-32).
PtasResult PtasOptimize(const Instance& instance, int precision,
                        const PtasLimits& limits = {});

}  // namespace mse::ptas
