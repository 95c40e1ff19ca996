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

// Allocation heuristics and approximation algorithms.
//
// All functions are pure and deterministic: sorting is stable with ties
// broken toward the lowest task index, and machine choices break ties toward
// the lowest machine index. Precondition violations throw
// Error(ErrorCode::kPrecondition).

#pragma once

#include <chrono>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mse/core.hpp"

namespace mse::alg {

// Longest Processing Time list scheduling over `sizes` on m machines; returns
// the machine of each entry of `sizes`.
std::vector<MachineId> Lpt(std::span<const Size> sizes, int machines);

// LPT on all tasks, ignoring types.
Allocation SchedMixed(const Instance& instance);

// LPT per type, merged machine-by-machine; every other type (by ascending
// type id among the types that have tasks) uses the reversed machine order.
Allocation SchedJuxtapose(const Instance& instance);

// Lower max-cost of SchedMixed and SchedJuxtapose; ties keep SchedMixed.
Allocation BestSchedule(const Instance& instance);

enum class InnerAlgorithm { kMixed, kJuxtapose, kBest };

// Clusters of compatible types get disjoint machine blocks. Every composition
// (m_1..m_K), m_k >= 1, sum m_k = m is tried; the lowest max-cost wins and
// ties go to the lexicographically smallest composition. Only clusters that
// own at least one task count toward K. Throws kPrecondition when m < K and
// kLimitExceeded when K > kMaxDedicatedClusters.
inline constexpr int kMaxDedicatedClusters = 6;
Allocation GreedyDedicated(const Instance& instance, InnerAlgorithm inner);

// Next-fit per cluster with tasks in nonincreasing size. The fill threshold
// is the smallest integer in [1, ceil(Lmax)] found by bisection for which at
// most m machines are used and no machine exceeds it, where
// Lmax = max(2L, L + pmax), L = W / (m - T). Requires m > T.
struct FillGreedyTrace {
  double average_load = 0;   // L
  double max_threshold = 0;  // Lmax
  Size threshold = 0;        // threshold of the returned allocation
  int machines_used = 0;
};
Allocation FillGreedy(const Instance& instance, FillGreedyTrace* trace = nullptr);

// Result of one next-fit pass at a fixed threshold; exposed for tests.
struct FillPass {
  Allocation allocation;
  int machines_used = 0;
  bool feasible = false;  // machines_used <= m and every load <= threshold
};
FillPass FillAtThreshold(const Instance& instance, Size threshold);

// Where GreedyFor2Types sends the tasks that would need machine m + 1.
enum class OverflowPolicy {
  kLastMachineOfFirstGroup,   // "the last machine the first type used"
  kFirstMachineOfFirstGroup,  // M_1, as argued in the 2-approximation proof
};

// Two groups (the two types when T = 2, otherwise the two compatibility
// clusters) are laid out one after the other, each group starting on a fresh
// machine, tasks in nonincreasing size. A task joins the current machine when
// the machine load stays within the threshold. The threshold is the smallest
// integer in [pmax, L] needing no overflow (bisection), falling back to
// L = W/m + max(W/m, pmax) with overflow otherwise.
struct GreedyFor2TypesOptions {
  OverflowPolicy overflow = OverflowPolicy::kLastMachineOfFirstGroup;
  bool search_threshold = true;
};
struct GreedyFor2TypesTrace {
  double threshold_bound = 0;  // L
  double threshold = 0;        // threshold used for the returned allocation
  bool overflowed = false;
};
Allocation GreedyFor2Types(const Instance& instance,
                           const GreedyFor2TypesOptions& options = {},
                           GreedyFor2TypesTrace* trace = nullptr);

// Branch-and-bound over task-to-machine assignments returning a provably
// optimal allocation. Tasks are branched in nonincreasing size order; a task
// may open machine k only when machine k - 1 is open (identical machines) and
// partial assignments whose max-cost already reaches the incumbent are cut
// (costs never decrease as tasks are added since alpha >= 0).
struct ExactLimits {
  int max_tasks = 12;
  int max_machines = 5;
};
struct ExactResult {
  Allocation allocation;
  double max_cost = 0;
  std::uint64_t nodes = 0;
};
ExactResult ExactSolve(const Instance& instance, const ExactLimits& limits = {});

// ---------------------------------------------------------------------------
// Registry

struct AlgorithmResult {
  Allocation allocation;
  double max_cost = 0;  // recomputed via MaxCost
  std::string algorithm_name;
  std::chrono::nanoseconds wall_time{0};
};

struct RunOptions {
  ExactLimits exact;
  GreedyFor2TypesOptions greedy_for_2types;
  int ptas_max_classes = 400;
  std::size_t ptas_max_states = 4'000'000;
};

// Names: mix, jux, best, ded-mix, ded-jux, ded-best, ded (= ded-best), fill,
// g2, exact, ptas:k=<int>.
std::vector<std::string> AlgorithmNames();
bool IsKnownAlgorithm(std::string_view name);
AlgorithmResult RunAlgorithm(std::string_view name, const Instance& instance,
                             const RunOptions& options = {});

}  // namespace mse::alg
