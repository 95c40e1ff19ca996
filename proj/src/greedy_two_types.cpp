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
#include <array>
#include <cmath>

#include "mse/algorithms.hpp"

namespace mse::alg {
namespace {

using Groups = std::array<std::vector<std::size_t>, 2>;

Groups SplitGroups(const Instance& instance) {
  std::vector<int> group_of(instance.type_count());
  if (instance.type_count() == 2) {
    group_of = {0, 1};
  } else {
    const Clustering clusters = CompatibilityClusters(instance.alpha());
    if (clusters.cluster_count != 2) {
      throw Error(ErrorCode::kPrecondition,
                  "g2: needs T = 2 or exactly 2 compatibility clusters (T = " +
                      std::to_string(instance.type_count()) + ", K = " +
                      std::to_string(clusters.cluster_count) + ")");
    }
    group_of = clusters.cluster_of;
  }
  Groups groups;
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    groups[group_of[instance.task(i).type]].push_back(i);
  }
  for (auto& g : groups) {
    std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
      return instance.task(a).size > instance.task(b).size;
    });
  }
  return groups;
}

struct Pass {
  Allocation allocation;
  bool overflowed = false;
};

Pass Layout(const Instance& instance, const Groups& groups, Size threshold,
            OverflowPolicy policy) {
  const int m = instance.machines();
  Pass pass;
  pass.allocation.assignment.assign(instance.task_count(), 0);
  int used = 0;
  int first_of_group0 = -1;
  int last_of_group0 = -1;
  for (int g = 0; g < 2; ++g) {
    Size load = 0;
    int current = -1;
    for (std::size_t i : groups[g]) {
      const Size p = instance.task(i).size;
      if (!pass.overflowed && (current < 0 || load + p > threshold)) {
        if (used == m) {
          pass.overflowed = true;
        } else {
          current = used++;
          load = 0;
          if (g == 0) {
            if (first_of_group0 < 0) first_of_group0 = current;
            last_of_group0 = current;
          }
        }
      }
      if (pass.overflowed) {
        int target = policy == OverflowPolicy::kFirstMachineOfFirstGroup
                         ? first_of_group0
                         : last_of_group0;
        if (target < 0) target = m - 1;
        pass.allocation.assignment[i] = target;
      } else {
        load += p;
        pass.allocation.assignment[i] = current;
      }
    }
  }
  return pass;
}

}  // namespace

Allocation GreedyFor2Types(const Instance& instance,
                           const GreedyFor2TypesOptions& options,
                           GreedyFor2TypesTrace* trace) {
  const int m = instance.machines();
  if (m < 2) {
    throw Error(ErrorCode::kPrecondition, "g2: requires m >= 2");
  }
  const Groups groups = SplitGroups(instance);
  const InstanceStats stats = ComputeStats(instance);
  const double avg = static_cast<double>(stats.total_load) / m;
  const double bound = avg + std::max(avg, static_cast<double>(stats.max_size));
  // Loads are integral, so "load <= bound" is "load <= floor(bound)".
  Size hi = static_cast<Size>(std::floor(bound));
  Size lo = stats.max_size;

  Pass best = Layout(instance, groups, hi, options.overflow);
  if (options.search_threshold && !best.overflowed) {
    while (lo < hi) {
      const Size mid = lo + (hi - lo) / 2;
      Pass pass = Layout(instance, groups, mid, options.overflow);
      if (!pass.overflowed) {
        hi = mid;
        best = std::move(pass);
      } else {
        lo = mid + 1;
      }
    }
  }
  if (trace != nullptr) {
    trace->threshold_bound = bound;
    trace->threshold = static_cast<double>(hi);
    trace->overflowed = best.overflowed;
  }
  return std::move(best.allocation);
}

}  // namespace mse::alg
