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

#include "mse/bounds.hpp"

#include <algorithm>
#include <numeric>

namespace mse::bounds {

double LbPmax(const Instance& instance) {
  double best = 0.0;
  for (const Task& t : instance.tasks()) {
    best = std::max(best, static_cast<double>(t.size) * instance.alpha().at(t.type, t.type));
  }
  return best;
}

double LbAvgLoad(const Instance& instance) {
  if (!instance.alpha().all_at_least_one()) {
    throw Error(ErrorCode::kNotApplicable, "W/m bound needs every coefficient >= 1");
  }
  const InstanceStats stats = ComputeStats(instance);
  return static_cast<double>(stats.total_load) / instance.machines();
}

lp::LpProblem BuildLoadSplitLp(const Instance& instance, std::span<const TypeId> types) {
  const InstanceStats stats = ComputeStats(instance);
  std::vector<TypeId> used;
  if (types.empty()) {
    used.resize(instance.type_count());
    std::iota(used.begin(), used.end(), 0);
  } else {
    used.assign(types.begin(), types.end());
  }
  std::erase_if(used, [&](TypeId t) { return stats.per_type_load[t] == 0; });

  const int m = instance.machines();
  const std::size_t T = used.size();
  const std::size_t vars = T * m + 1;
  const std::size_t c_var = vars - 1;
  const AlphaMatrix& alpha = instance.alpha();

  lp::LpProblem p;
  p.objective.assign(vars, 0.0);
  p.objective[c_var] = 1.0;
  for (int k = 0; k < m; ++k) {
    for (TypeId u : used) {
      std::vector<double> row(vars, 0.0);
      for (std::size_t i = 0; i < T; ++i) {
        const TypeId t = used[i];
        row[i * m + k] = static_cast<double>(stats.per_type_load[t]) *
                         std::min(1.0, alpha.at(t, u));
      }
      row[c_var] = -1.0;
      p.a_ub.push_back(std::move(row));
      p.b_ub.push_back(0.0);
    }
  }
  for (std::size_t i = 0; i < T; ++i) {
    std::vector<double> row(vars, 0.0);
    for (int k = 0; k < m; ++k) row[i * m + k] = 1.0;
    p.a_eq.push_back(std::move(row));
    p.b_eq.push_back(1.0);
  }
  return p;
}

LpBound LbLpCompatible(const Instance& instance, std::span<const TypeId> types) {
  lp::LpProblem p = BuildLoadSplitLp(instance, types);
  // Solve in units of the largest coefficient for conditioning.
  double scale = 0.0;
  for (const auto& row : p.a_ub) {
    for (std::size_t j = 0; j + 1 < row.size(); ++j) scale = std::max(scale, row[j]);
  }
  if (scale == 0.0) scale = 1.0;
  for (auto& row : p.a_ub) {
    for (std::size_t j = 0; j + 1 < row.size(); ++j) row[j] /= scale;
  }
  LpBound out;
  out.solution = lp::SimplexSolve(p);
  if (out.solution.status == lp::LpStatus::kOptimal &&
      lp::MaxResidual(p, out.solution.x) <= 1e-9) {
    out.solution.objective *= scale;
    out.solution.x.back() *= scale;
    out.value = out.solution.objective;
  }
  return out;
}

std::optional<double> LbMixedClusters(const Instance& instance, const Clustering& clustering) {
  double best = 0.0;
  for (int c = 0; c < clustering.cluster_count; ++c) {
    const std::vector<TypeId> members = clustering.members(c);
    const LpBound b = LbLpCompatible(instance, members);
    if (!b.value) return std::nullopt;
    best = std::max(best, *b.value);
  }
  return best;
}

BoundReport ComputeBounds(const Instance& instance) {
  BoundReport r;
  r.pmax_bound = LbPmax(instance);
  r.chosen = r.pmax_bound;
  auto consider = [&](double v, const char* source) {
    if (v > r.chosen) {
      r.chosen = v;
      r.source = source;
    }
  };

  const AlphaMatrix& alpha = instance.alpha();
  if (alpha.all_at_least_one()) {
    r.avg_load_bound = LbAvgLoad(instance);
    consider(*r.avg_load_bound, "avg_load");
  }
  const Clustering clustering = CompatibilityClusters(alpha);
  if (clustering.cluster_count == 1) {
    const LpBound b = LbLpCompatible(instance);
    r.lp_bound = b.value;
    r.lp_failed = !b.value;
    if (b.value) consider(*b.value, "lp");
  } else if (!alpha.all_at_least_one()) {
    r.cluster_bound = LbMixedClusters(instance, clustering);
    r.lp_failed = !r.cluster_bound;
    if (r.cluster_bound) consider(*r.cluster_bound, "lp_clusters");
  }
  return r;
}

}  // namespace mse::bounds
