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

#include "mse/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mse {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kInvalidAllocation: return "invalid-allocation";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kLimitExceeded: return "limit-exceeded";
    case ErrorCode::kNotApplicable: return "not-applicable";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSampling: return "sampling";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// AlphaMatrix

AlphaMatrix::AlphaMatrix(int type_count)
    : type_count_(type_count),
      coeff_(static_cast<std::size_t>(type_count) * type_count, 0.0) {
  if (type_count < 1) {
    throw Error(ErrorCode::kInvalidInstance, "alpha: need at least one type");
  }
  for (int t = 0; t < type_count; ++t) set(t, t, 1.0);
}

AlphaMatrix::AlphaMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : AlphaMatrix(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}

AlphaMatrix::AlphaMatrix(const std::vector<std::vector<double>>& rows)
    : type_count_(static_cast<int>(rows.size())) {
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidInstance, "alpha: need at least one type");
  }
  coeff_.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      throw Error(ErrorCode::kInvalidInstance, "alpha: matrix is not square");
    }
    coeff_.insert(coeff_.end(), r.begin(), r.end());
  }
  Validate();
}

void AlphaMatrix::Validate() const {
  for (double v : coeff_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidInstance,
                  "alpha: coefficients must be finite and nonnegative");
    }
  }
}

void AlphaMatrix::set(TypeId from, TypeId to, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kInvalidInstance,
                "alpha: coefficients must be finite and nonnegative");
  }
  coeff_[static_cast<std::size_t>(from) * type_count_ + to] = value;
}

double AlphaMatrix::max_entry() const {
  return *std::max_element(coeff_.begin(), coeff_.end());
}

double AlphaMatrix::min_diagonal() const {
  double best = at(0, 0);
  for (int t = 1; t < type_count_; ++t) best = std::min(best, at(t, t));
  return best;
}

bool AlphaMatrix::has_unit_diagonal() const {
  for (int t = 0; t < type_count_; ++t) {
    if (at(t, t) != 1.0) return false;
  }
  return true;
}

bool AlphaMatrix::is_symmetric() const {
  for (int a = 0; a < type_count_; ++a) {
    for (int b = a + 1; b < type_count_; ++b) {
      if (at(a, b) != at(b, a)) return false;
    }
  }
  return true;
}

bool AlphaMatrix::all_at_least_one() const {
  return std::all_of(coeff_.begin(), coeff_.end(),
                     [](double v) { return v >= 1.0; });
}

std::vector<std::vector<double>> AlphaMatrix::rows() const {
  std::vector<std::vector<double>> out(type_count_);
  for (int a = 0; a < type_count_; ++a) {
    out[a].assign(coeff_.begin() + static_cast<std::ptrdiff_t>(a) * type_count_,
                  coeff_.begin() + static_cast<std::ptrdiff_t>(a + 1) * type_count_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance / Allocation

Instance::Instance(std::vector<Task> tasks, AlphaMatrix alpha, int machines)
    : tasks_(std::move(tasks)), alpha_(std::move(alpha)), machines_(machines) {
  if (tasks_.empty()) {
    throw Error(ErrorCode::kInvalidInstance, "instance: no tasks");
  }
  if (machines_ < 1) {
    throw Error(ErrorCode::kInvalidInstance, "instance: need m >= 1");
  }
  if (alpha_.type_count() < 1) {
    throw Error(ErrorCode::kInvalidInstance, "instance: empty alpha matrix");
  }
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const Task& t = tasks_[i];
    if (t.size < 1) {
      throw Error(ErrorCode::kInvalidInstance,
                  "instance: task " + std::to_string(i) + " has size < 1");
    }
    if (t.type < 0 || t.type >= alpha_.type_count()) {
      throw Error(ErrorCode::kInvalidInstance,
                  "instance: task " + std::to_string(i) + " has type " +
                      std::to_string(t.type) + " outside [0," +
                      std::to_string(alpha_.type_count()) + ")");
    }
  }
}

Instance Instance::WithMachines(int machines) const {
  return Instance(tasks_, alpha_, machines);
}

bool IsValidAllocation(const Instance& instance, const Allocation& alloc) {
  if (alloc.assignment.size() != instance.task_count()) return false;
  return std::all_of(alloc.assignment.begin(), alloc.assignment.end(),
                     [&](MachineId k) { return k >= 0 && k < instance.machines(); });
}

void ValidateAllocation(const Instance& instance, const Allocation& alloc) {
  if (alloc.assignment.size() != instance.task_count()) {
    throw Error(ErrorCode::kInvalidAllocation,
                "allocation: length " + std::to_string(alloc.assignment.size()) +
                    " != task count " + std::to_string(instance.task_count()));
  }
  for (std::size_t i = 0; i < alloc.assignment.size(); ++i) {
    const MachineId k = alloc.assignment[i];
    if (k < 0 || k >= instance.machines()) {
      throw Error(ErrorCode::kInvalidAllocation,
                  "allocation: task " + std::to_string(i) + " on machine " +
                      std::to_string(k) + " outside [0," +
                      std::to_string(instance.machines()) + ")");
    }
  }
}

// ---------------------------------------------------------------------------
// Loads and costs

Size LoadMatrix::machine_total(MachineId k) const {
  const auto r = row(k);
  return std::accumulate(r.begin(), r.end(), Size{0});
}

Size LoadMatrix::type_total(TypeId t) const {
  Size sum = 0;
  for (int k = 0; k < machines_; ++k) sum += at(k, t);
  return sum;
}

int LoadMatrix::types_on(MachineId k) const {
  const auto r = row(k);
  return static_cast<int>(std::count_if(r.begin(), r.end(),
                                        [](Size v) { return v > 0; }));
}

LoadMatrix MachineTypeLoads(const Instance& instance, const Allocation& alloc) {
  ValidateAllocation(instance, alloc);
  LoadMatrix loads(instance.machines(), instance.type_count());
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    const Task& t = instance.task(i);
    loads.at(alloc.assignment[i], t.type) += t.size;
  }
  return loads;
}

double CostOnMachine(const AlphaMatrix& alpha, std::span<const Size> row,
                     TypeId type) {
  double cost = 0.0;
  for (int t = 0; t < static_cast<int>(row.size()); ++t) {
    if (row[t] != 0) cost += static_cast<double>(row[t]) * alpha.at(t, type);
  }
  return cost;
}

std::vector<double> TaskCosts(const Instance& instance,
                              const Allocation& alloc) {
  const LoadMatrix loads = MachineTypeLoads(instance, alloc);
  std::vector<double> costs(instance.task_count());
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    costs[i] = CostOnMachine(instance.alpha(), loads.row(alloc.assignment[i]),
                             instance.task(i).type);
  }
  return costs;
}

double MaxCost(const Instance& instance, const Allocation& alloc) {
  const LoadMatrix loads = MachineTypeLoads(instance, alloc);
  double best = 0.0;
  // Tasks of one type on one machine share a cost, so it suffices to look at
  // the (machine, present type) pairs.
  for (int k = 0; k < loads.machines(); ++k) {
    const auto r = loads.row(k);
    for (int t = 0; t < loads.types(); ++t) {
      if (r[t] > 0) best = std::max(best, CostOnMachine(instance.alpha(), r, t));
    }
  }
  return best;
}

Size Makespan(const Instance& instance, const Allocation& alloc) {
  const LoadMatrix loads = MachineTypeLoads(instance, alloc);
  Size best = 0;
  for (int k = 0; k < loads.machines(); ++k) {
    best = std::max(best, loads.machine_total(k));
  }
  return best;
}

int SharedMachineCount(const Instance& instance, const Allocation& alloc) {
  const LoadMatrix loads = MachineTypeLoads(instance, alloc);
  int shared = 0;
  for (int k = 0; k < loads.machines(); ++k) {
    if (loads.types_on(k) > 1) ++shared;
  }
  return shared;
}

// ---------------------------------------------------------------------------
// Clusters and stats

std::vector<TypeId> Clustering::members(int c) const {
  std::vector<TypeId> out;
  for (int t = 0; t < static_cast<int>(cluster_of.size()); ++t) {
    if (cluster_of[t] == c) out.push_back(t);
  }
  return out;
}

Clustering CompatibilityClusters(const AlphaMatrix& alpha) {
  const int T = alpha.type_count();
  Clustering out;
  out.cluster_of.assign(T, -1);
  std::vector<std::vector<TypeId>> clusters;
  for (int t = 0; t < T; ++t) {
    int chosen = -1;
    for (int c = 0; c < static_cast<int>(clusters.size()) && chosen < 0; ++c) {
      const bool fits = std::all_of(
          clusters[c].begin(), clusters[c].end(), [&](TypeId u) {
            return alpha.at(t, u) <= 1.0 && alpha.at(u, t) <= 1.0;
          });
      if (fits) chosen = c;
    }
    if (chosen < 0) {
      chosen = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[chosen].push_back(t);
    out.cluster_of[t] = chosen;
  }
  out.cluster_count = static_cast<int>(clusters.size());
  return out;
}

InstanceStats ComputeStats(const Instance& instance) {
  InstanceStats s;
  const int T = instance.type_count();
  s.per_type_load.assign(T, 0);
  s.sorted_sizes_per_type.assign(T, {});
  for (const Task& t : instance.tasks()) {
    s.total_load += t.size;
    s.max_size = std::max(s.max_size, t.size);
    s.per_type_load[t.type] += t.size;
    s.sorted_sizes_per_type[t.type].push_back(t.size);
  }
  for (auto& sizes : s.sorted_sizes_per_type) {
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
  }
  return s;
}

Instance SubInstance(const Instance& instance,
                     std::span<const std::size_t> task_ids, int machines) {
  std::vector<Task> tasks;
  tasks.reserve(task_ids.size());
  for (std::size_t i : task_ids) tasks.push_back(instance.task(i));
  return Instance(std::move(tasks), instance.alpha(), machines);
}

}  // namespace mse
