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
#include <cmath>
#include <numeric>

#include "mse/algorithms.hpp"

namespace mse::alg {
namespace {

// Task ids grouped by cluster (ascending cluster index), each group sorted by
// nonincreasing size with ties by id.
std::vector<std::vector<std::size_t>> ClusterOrder(const Instance& instance) {
  const Clustering clusters = CompatibilityClusters(instance.alpha());
  std::vector<std::vector<std::size_t>> groups(clusters.cluster_count);
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    groups[clusters.cluster_of[instance.task(i).type]].push_back(i);
  }
  for (auto& g : groups) {
    std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
      return instance.task(a).size > instance.task(b).size;
    });
  }
  return groups;
}

FillPass NextFit(const Instance& instance,
                 const std::vector<std::vector<std::size_t>>& groups,
                 Size threshold) {
  const int m = instance.machines();
  FillPass pass;
  pass.allocation.assignment.assign(instance.task_count(), 0);
  bool within = true;
  for (const auto& group : groups) {
    Size load = 0;
    bool open = false;
    for (std::size_t i : group) {
      const Size p = instance.task(i).size;
      if (!open || load + p > threshold) {
        ++pass.machines_used;
        load = 0;
        open = true;
      }
      load += p;
      within = within && load <= threshold;
      pass.allocation.assignment[i] = std::min(pass.machines_used - 1, m - 1);
    }
  }
  pass.feasible = within && pass.machines_used <= m;
  return pass;
}

}  // namespace

FillPass FillAtThreshold(const Instance& instance, Size threshold) {
  return NextFit(instance, ClusterOrder(instance), threshold);
}

Allocation FillGreedy(const Instance& instance, FillGreedyTrace* trace) {
  const int m = instance.machines();
  const int T = instance.type_count();
  if (m <= T) {
    throw Error(ErrorCode::kPrecondition,
                "fill: requires m > T (m = " + std::to_string(m) +
                    ", T = " + std::to_string(T) + ")");
  }
  const InstanceStats stats = ComputeStats(instance);
  const double avg = static_cast<double>(stats.total_load) / (m - T);
  const double l_max = std::max(2.0 * avg, avg + static_cast<double>(stats.max_size));

  const auto groups = ClusterOrder(instance);
  Size lo = 1;
  Size hi = static_cast<Size>(std::ceil(l_max));
  FillPass best = NextFit(instance, groups, hi);
  if (!best.feasible) {
    // Unreachable when m > T: every closed machine carries more than L.
    throw Error(ErrorCode::kPrecondition, "fill: infeasible at Lmax");
  }
  while (lo < hi) {
    const Size mid = lo + (hi - lo) / 2;
    FillPass pass = NextFit(instance, groups, mid);
    if (pass.feasible) {
      hi = mid;
      best = std::move(pass);
    } else {
      lo = mid + 1;
    }
  }
  if (trace != nullptr) {
    trace->average_load = avg;
    trace->max_threshold = l_max;
    trace->threshold = hi;
    trace->machines_used = best.machines_used;
  }
  return std::move(best.allocation);
}

}  // namespace mse::alg
