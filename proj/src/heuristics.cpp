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

#include <algorithm>
#include <limits>
#include <numeric>

#include "mse/algorithms.hpp"

namespace mse::alg {
namespace {

// Indices of `sizes` by nonincreasing size, ties by index.
std::vector<std::size_t> DecreasingOrder(std::span<const Size> sizes) {
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sizes[a] > sizes[b];
  });
  return order;
}

std::vector<std::vector<std::size_t>> TasksByType(const Instance& instance) {
  std::vector<std::vector<std::size_t>> by_type(instance.type_count());
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    by_type[instance.task(i).type].push_back(i);
  }
  return by_type;
}

// Shifts a block-local allocation of the tasks `ids` to start at `offset`.
void Place(Allocation& out, std::span<const std::size_t> ids,
           const Allocation& local, int offset) {
  for (std::size_t j = 0; j < ids.size(); ++j) {
    out.assignment[ids[j]] = offset + local.assignment[j];
  }
}

Allocation RunInner(const Instance& instance, InnerAlgorithm inner) {
  switch (inner) {
    case InnerAlgorithm::kMixed: return SchedMixed(instance);
    case InnerAlgorithm::kJuxtapose: return SchedJuxtapose(instance);
    case InnerAlgorithm::kBest: return BestSchedule(instance);
  }
  return SchedMixed(instance);
}

}  // namespace

std::vector<MachineId> Lpt(std::span<const Size> sizes, int machines) {
  if (machines < 1) {
    throw Error(ErrorCode::kPrecondition, "lpt: need m >= 1");
  }
  std::vector<MachineId> out(sizes.size(), 0);
  std::vector<Size> load(machines, 0);
  for (std::size_t i : DecreasingOrder(sizes)) {
    const auto k = static_cast<MachineId>(
        std::min_element(load.begin(), load.end()) - load.begin());
    out[i] = k;
    load[k] += sizes[i];
  }
  return out;
}

Allocation SchedMixed(const Instance& instance) {
  std::vector<Size> sizes;
  sizes.reserve(instance.task_count());
  for (const Task& t : instance.tasks()) sizes.push_back(t.size);
  return Allocation{Lpt(sizes, instance.machines())};
}

Allocation SchedJuxtapose(const Instance& instance) {
  const int m = instance.machines();
  Allocation out{std::vector<MachineId>(instance.task_count(), 0)};
  int position = 0;  // rank among the types that have tasks
  for (const auto& ids : TasksByType(instance)) {
    if (ids.empty()) continue;
    std::vector<Size> sizes;
    sizes.reserve(ids.size());
    for (std::size_t i : ids) sizes.push_back(instance.task(i).size);
    const std::vector<MachineId> local = Lpt(sizes, m);
    const bool reversed = position % 2 == 1;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      out.assignment[ids[j]] = reversed ? m - 1 - local[j] : local[j];
    }
    ++position;
  }
  return out;
}

Allocation BestSchedule(const Instance& instance) {
  Allocation mixed = SchedMixed(instance);
  Allocation jux = SchedJuxtapose(instance);
  return MaxCost(instance, jux) < MaxCost(instance, mixed) ? std::move(jux)
                                                           : std::move(mixed);
}

Allocation GreedyDedicated(const Instance& instance, InnerAlgorithm inner) {
  const Clustering clusters = CompatibilityClusters(instance.alpha());
  std::vector<std::vector<std::size_t>> groups(clusters.cluster_count);
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    groups[clusters.cluster_of[instance.task(i).type]].push_back(i);
  }
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  const int K = static_cast<int>(groups.size());
  const int m = instance.machines();
  if (K > kMaxDedicatedClusters) {
    throw Error(ErrorCode::kLimitExceeded,
                "ded: " + std::to_string(K) + " clusters exceed the limit of " +
                    std::to_string(kMaxDedicatedClusters));
  }
  if (m < K) {
    throw Error(ErrorCode::kPrecondition,
                "ded: m = " + std::to_string(m) + " < K = " + std::to_string(K) +
                    " clusters; every cluster needs a dedicated machine");
  }

  // Blocks are disjoint, so the cost of a composition is the max over its
  // blocks; each (cluster, block size) pair is solved once.
  const int max_block = m - K + 1;
  std::vector<std::vector<Allocation>> local(K);
  std::vector<std::vector<double>> cost(K);
  for (int c = 0; c < K; ++c) {
    local[c].resize(max_block + 1);
    cost[c].assign(max_block + 1, 0.0);
    for (int size = 1; size <= max_block; ++size) {
      const Instance sub = SubInstance(instance, groups[c], size);
      local[c][size] = RunInner(sub, inner);
      cost[c][size] = MaxCost(sub, local[c][size]);
    }
  }

  // Compositions in lexicographic order; strict improvement keeps the
  // lexicographically smallest among ties.
  std::vector<int> comp(K, 0);
  std::vector<int> best_comp;
  double best_cost = std::numeric_limits<double>::infinity();
  auto enumerate = [&](auto& self, int c, int remaining, double partial) -> void {
    if (partial >= best_cost) return;  // cannot strictly improve
    if (c == K - 1) {
      comp[c] = remaining;
      const double total = std::max(partial, cost[c][remaining]);
      if (total < best_cost) {
        best_cost = total;
        best_comp = comp;
      }
      return;
    }
    for (int size = 1; size <= remaining - (K - 1 - c); ++size) {
      comp[c] = size;
      self(self, c + 1, remaining - size, std::max(partial, cost[c][size]));
    }
  };
  enumerate(enumerate, 0, m, 0.0);

  Allocation out{std::vector<MachineId>(instance.task_count(), 0)};
  int offset = 0;
  for (int c = 0; c < K; ++c) {
    Place(out, groups[c], local[c][best_comp[c]], offset);
    offset += best_comp[c];
  }
  return out;
}

}  // namespace mse::alg
