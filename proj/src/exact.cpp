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

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, int machines)
      : instance_(instance),
        machines_(machines),
        types_(instance.type_count()),
        loads_(static_cast<std::size_t>(machines) * types_, 0),
        current_(instance.task_count(), 0) {
    order_.resize(instance.task_count());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return instance.task(a).size > instance.task(b).size;
    });
  }

  ExactResult Solve() {
    Branch(0, 0, 0.0);
    ExactResult out;
    out.allocation.assignment = best_;
    out.max_cost = best_cost_;
    out.nodes = nodes_;
    return out;
  }

 private:
  // Max cost among the types present on machine k.
  double MachineCost(int k) const {
    const Size* row = &loads_[static_cast<std::size_t>(k) * types_];
    double worst = 0.0;
    for (int u = 0; u < types_; ++u) {
      if (row[u] == 0) continue;
      double c = 0.0;
      for (int t = 0; t < types_; ++t) {
        if (row[t] != 0) c += static_cast<double>(row[t]) * instance_.alpha().at(t, u);
      }
      worst = std::max(worst, c);
    }
    return worst;
  }

  void Branch(std::size_t depth, int opened, double partial) {
    ++nodes_;
    if (depth == order_.size()) {
      // partial < best_cost_ holds here, otherwise the branch was cut.
      best_cost_ = partial;
      best_ = current_;
      return;
    }
    const std::size_t task = order_[depth];
    const Task& t = instance_.task(task);
    const int limit = std::min(opened + 1, machines_);
    for (int k = 0; k < limit; ++k) {
      Size& cell = loads_[static_cast<std::size_t>(k) * types_ + t.type];
      cell += t.size;
      const double cost = std::max(partial, MachineCost(k));
      if (cost < best_cost_) {
        current_[task] = k;
        Branch(depth + 1, std::max(opened, k + 1), cost);
      }
      cell -= t.size;
    }
  }

  const Instance& instance_;
  int machines_;
  int types_;
  std::vector<Size> loads_;
  std::vector<std::size_t> order_;
  std::vector<MachineId> current_;
  std::vector<MachineId> best_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult ExactSolve(const Instance& instance, const ExactLimits& limits) {
  const int n = static_cast<int>(instance.task_count());
  // With identical machines an optimum never needs more than n of them.
  const int machines = std::min(instance.machines(), n);
  if (n > limits.max_tasks || machines > limits.max_machines) {
    throw Error(ErrorCode::kLimitExceeded,
                "exact: instance with n = " + std::to_string(n) + ", m = " +
                    std::to_string(instance.machines()) +
                    " exceeds the oracle limits (n <= " +
                    std::to_string(limits.max_tasks) + ", m <= " +
                    std::to_string(limits.max_machines) + ")");
  }
  return BranchAndBound(instance, machines).Solve();
}

}  // namespace mse::alg
