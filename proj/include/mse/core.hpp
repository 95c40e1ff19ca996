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

// Data model of the side-effects colocation problem.
//
// n tasks with integer sizes and types are partitioned onto m identical
// machines. The cost of a task i placed on machine k is
//
//   c_i = sum over types t of load[k][t] * alpha[t][type(i)]
//
// where load[k][t] is the summed size of type-t tasks on machine k. The
// objective is the maximum cost over all tasks.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mse/error.hpp"

namespace mse {

using Size = std::int64_t;
using TypeId = int;
using MachineId = int;

struct Task {
  Size size = 1;
  TypeId type = 0;

  friend bool operator==(const Task&, const Task&) = default;
};

// T x T interaction coefficients; at(t, u) is the impact of type-t load on the
// cost of type-u tasks. Row-major, not necessarily symmetric.
class AlphaMatrix {
 public:
  AlphaMatrix() = default;
  explicit AlphaMatrix(int type_count);  // identity
  AlphaMatrix(std::initializer_list<std::initializer_list<double>> rows);
  explicit AlphaMatrix(const std::vector<std::vector<double>>& rows);

  int type_count() const noexcept { return type_count_; }
  double at(TypeId from, TypeId to) const {
    return coeff_[static_cast<std::size_t>(from) * type_count_ + to];
  }
  void set(TypeId from, TypeId to, double value);

  double max_entry() const;
  double min_diagonal() const;
  bool has_unit_diagonal() const;
  bool is_symmetric() const;
  // Every entry (diagonal included) is >= 1; the W/m bound is sound then.
  bool all_at_least_one() const;

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const AlphaMatrix&, const AlphaMatrix&) = default;

 private:
  void Validate() const;

  int type_count_ = 0;
  std::vector<double> coeff_;
};

class Instance {
 public:
  Instance() = default;
  // Throws Error(kInvalidInstance) when a task has size < 1, an out-of-range
  // type, when n == 0 or m < 1. Off-unit diagonals are accepted.
  Instance(std::vector<Task> tasks, AlphaMatrix alpha, int machines);

  std::size_t task_count() const noexcept { return tasks_.size(); }
  int machines() const noexcept { return machines_; }
  int type_count() const noexcept { return alpha_.type_count(); }
  const std::vector<Task>& tasks() const noexcept { return tasks_; }
  const Task& task(std::size_t i) const { return tasks_[i]; }
  const AlphaMatrix& alpha() const noexcept { return alpha_; }

  // Same tasks and coefficients on a different machine count.
  Instance WithMachines(int machines) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Task> tasks_;
  AlphaMatrix alpha_;
  int machines_ = 1;
};

// assignment[i] is the machine of task i.
struct Allocation {
  std::vector<MachineId> assignment;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws Error(kInvalidAllocation) on length or index mismatch.
void ValidateAllocation(const Instance& instance, const Allocation& alloc);
bool IsValidAllocation(const Instance& instance, const Allocation& alloc);

class LoadMatrix {
 public:
  LoadMatrix(int machines, int types)
      : machines_(machines), types_(types),
        load_(static_cast<std::size_t>(machines) * types, 0) {}

  int machines() const noexcept { return machines_; }
  int types() const noexcept { return types_; }
  Size at(MachineId k, TypeId t) const {
    return load_[static_cast<std::size_t>(k) * types_ + t];
  }
  Size& at(MachineId k, TypeId t) {
    return load_[static_cast<std::size_t>(k) * types_ + t];
  }
  std::span<const Size> row(MachineId k) const {
    return {load_.data() + static_cast<std::size_t>(k) * types_,
            static_cast<std::size_t>(types_)};
  }
  Size machine_total(MachineId k) const;
  Size type_total(TypeId t) const;
  // Number of types with positive load on machine k.
  int types_on(MachineId k) const;

 private:
  int machines_;
  int types_;
  std::vector<Size> load_;
};

struct InstanceStats {
  Size total_load = 0;
  Size max_size = 0;
  std::vector<Size> per_type_load;
  std::vector<std::vector<Size>> sorted_sizes_per_type;  // nonincreasing
};

struct Clustering {
  std::vector<int> cluster_of;  // per type
  int cluster_count = 0;

  // Types of cluster c, ascending.
  std::vector<TypeId> members(int c) const;
};

LoadMatrix MachineTypeLoads(const Instance& instance, const Allocation& alloc);

// Cost of a type-`type` task on a machine whose per-type loads are `row`.
double CostOnMachine(const AlphaMatrix& alpha, std::span<const Size> row,
                     TypeId type);

std::vector<double> TaskCosts(const Instance& instance,
                              const Allocation& alloc);
double MaxCost(const Instance& instance, const Allocation& alloc);

// Largest machine total load, i.e. the P||Cmax objective of the allocation.
Size Makespan(const Instance& instance, const Allocation& alloc);

// Greedy first-fit over types in ascending id: a type joins the first cluster
// whose every member is mutually compatible with it (both coefficients <= 1),
// otherwise opens a new cluster.
Clustering CompatibilityClusters(const AlphaMatrix& alpha);

InstanceStats ComputeStats(const Instance& instance);

// Number of machines hosting tasks of at least two types.
int SharedMachineCount(const Instance& instance, const Allocation& alloc);

// Sub-instance made of `task_ids` (in the given order) on `machines`
// machines, keeping the full coefficient matrix.
Instance SubInstance(const Instance& instance,
                     std::span<const std::size_t> task_ids, int machines);

}  // namespace mse
