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

// Lower bounds on the optimal max-cost.

#pragma once

#include <optional>
#include <span>
#include <string>

#include "mse/core.hpp"
#include "mse/simplex.hpp"

namespace mse::bounds {

// max_i p_i * alpha[t_i][t_i]: the largest task costs at least that alone.
double LbPmax(const Instance& instance);

// W / m. Throws Error(kNotApplicable) unless every coefficient is >= 1.
double LbAvgLoad(const Instance& instance);

// Fractional load-splitting LP over `types` (all types when empty) on
// m machines:
//
//   min c  s.t.  sum_t x[t][k] W_t min(1, alpha[t][u]) <= c   for all k, u
//                sum_k x[t][k] = 1                             for all t
//
// Types without load are left out. Variables are ordered x[t][k] (type
// major) followed by c.
lp::LpProblem BuildLoadSplitLp(const Instance& instance,
                               std::span<const TypeId> types = {});

struct LpBound {
  std::optional<double> value;  // nullopt: solver failure
  lp::LpSolution solution;
};
LpBound LbLpCompatible(const Instance& instance, std::span<const TypeId> types = {});

// Max over compatibility clusters of the LP restricted to the cluster, each
// cluster on all m machines. nullopt when any cluster LP fails.
std::optional<double> LbMixedClusters(const Instance& instance,
                                      const Clustering& clustering);

struct BoundReport {
  double pmax_bound = 0;
  std::optional<double> avg_load_bound;   // all alpha >= 1 only
  std::optional<double> lp_bound;         // a single compatibility cluster
  std::optional<double> cluster_bound;    // several clusters, some alpha < 1
  bool lp_failed = false;
  double chosen = 0;                      // max of the computed bounds
  std::string source = "pmax";            // pmax | avg_load | lp | lp_clusters
};

BoundReport ComputeBounds(const Instance& instance);

}  // namespace mse::bounds
