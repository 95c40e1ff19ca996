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


// Reference computations for tests. Written from the problem definition
// only, without calling into the library's cost or solver code.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "mse/core.hpp"

namespace oracle {

// Cost of task i = sum over tasks j on the same machine of p_j * alpha[t_j][t_i].
inline double PairwiseMaxCost(const mse::Instance& inst, const std::vector<int>& machine_of) {
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.task_count(); ++i) {
    double c = 0.0;
    for (std::size_t j = 0; j < inst.task_count(); ++j) {
      if (machine_of[j] == machine_of[i]) {
        c += static_cast<double>(inst.task(j).size) *
             inst.alpha().at(inst.task(j).type, inst.task(i).type);
      }
    }
    worst = std::max(worst, c);
  }
  return worst;
}

// Calls visit(machine_of) for every assignment up to machine relabeling
// (restricted growth strings using at most m labels).
inline void ForEachPartition(std::size_t n, int m,
                             const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      visit(a);
      return;
    }
    for (int k = 0; k < std::min(used + 1, m); ++k) {
      a[i] = k;
      rec(i + 1, std::max(used, k + 1));
    }
  };
  rec(0, 0);
}

inline double BruteForceOpt(const mse::Instance& inst) {
  double best = std::numeric_limits<double>::infinity();
  ForEachPartition(inst.task_count(), inst.machines(), [&](const std::vector<int>& a) {
    best = std::min(best, PairwiseMaxCost(inst, a));
  });
  return best;
}

inline int SharedMachines(const mse::Instance& inst, const std::vector<int>& machine_of) {
  std::vector<std::vector<bool>> seen(inst.machines(),
                                      std::vector<bool>(inst.type_count(), false));
  for (std::size_t i = 0; i < inst.task_count(); ++i) {
    seen[machine_of[i]][inst.task(i).type] = true;
  }
  int shared = 0;
  for (const auto& row : seen) shared += std::count(row.begin(), row.end(), true) >= 2;
  return shared;
}

// Fewest shared machines over all allocations within `tol` of the optimum.
inline int MinSharedAmongOptima(const mse::Instance& inst, double opt, double tol = 1e-9) {
  int best = std::numeric_limits<int>::max();
  ForEachPartition(inst.task_count(), inst.machines(), [&](const std::vector<int>& a) {
    if (PairwiseMaxCost(inst, a) <= opt + tol) best = std::min(best, SharedMachines(inst, a));
  });
  return best;
}

// Graham's LPT makespan: sizes sorted nonincreasing, each to a least-loaded machine.
inline std::int64_t LptMakespan(std::vector<std::int64_t> sizes, int m) {
  std::sort(sizes.rbegin(), sizes.rend());
  std::vector<std::int64_t> load(m, 0);
  for (auto s : sizes) *std::min_element(load.begin(), load.end()) += s;
  return *std::max_element(load.begin(), load.end());
}

// Subset-sum reachability: can `values` be split into two equal halves?
inline bool HasPerfectPartition(const std::vector<std::int64_t>& values) {
  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (total % 2 != 0) return false;
  std::vector<bool> reach(total / 2 + 1, false);
  reach[0] = true;
  for (auto v : values) {
    for (std::int64_t s = total / 2; s >= v; --s) reach[s] = reach[s] || reach[s - v];
  }
  return reach[total / 2];
}

// Load-splitting LP of a two-type instance by exhaustive search over x on a
// grid of step 1/steps: every x[t][.] is a composition of `steps` units.
inline double GridSearchLp(const std::vector<double>& W, const mse::AlphaMatrix& alpha, int m,
                           int steps = 100) {
  std::vector<std::vector<int>> splits;
  std::vector<int> cur(m, 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == m - 1) {
      cur[k] = left;
      splits.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[k] = v;
      rec(k + 1, left - v);
    }
  };
  rec(0, steps);
  const int T = static_cast<int>(W.size());
  auto coeff = [&](int t, int u) { return W[t] * std::min(1.0, alpha.at(t, u)) / steps; };
  double best = std::numeric_limits<double>::infinity();
  if (T == 1) {
    for (const auto& s : splits) {
      double c = 0;
      for (int k = 0; k < m; ++k) c = std::max(c, coeff(0, 0) * s[k]);
      best = std::min(best, c);
    }
    return best;
  }
  for (const auto& s0 : splits) {
    for (const auto& s1 : splits) {
      double c = 0;
      for (int k = 0; k < m && c < best; ++k) {
        for (int u = 0; u < 2; ++u) c = std::max(c, coeff(0, u) * s0[k] + coeff(1, u) * s1[k]);
      }
      best = std::min(best, c);
    }
  }
  return best;
}

// Percentile by sorting and interpolating between closest ranks.
inline double SortPercentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] * (1 - (pos - lo)) + v[lo + 1] * (pos - lo);
}

}  // namespace oracle
