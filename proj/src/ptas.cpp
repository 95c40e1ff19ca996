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

#include "mse/ptas.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace mse::ptas {
namespace {

using Int = Rational::Int;

constexpr int kGridBits = 32;
constexpr std::int64_t kGridDen = std::int64_t{1} << kGridBits;

// Coefficients in both representations: doubles settle clear cases, the
// rationals decide anything within a relative 1e-9 of the capacity.
class ExactAlpha {
 public:
  explicit ExactAlpha(const AlphaMatrix& alpha) : types_(alpha.type_count()) {
    approx_.resize(static_cast<std::size_t>(types_) * types_);
    exact_.resize(approx_.size());
    for (int a = 0; a < types_; ++a) {
      for (int b = 0; b < types_; ++b) {
        const std::size_t idx = static_cast<std::size_t>(a) * types_ + b;
        exact_[idx] = Rational::FromDouble(alpha.at(a, b));
        approx_[idx] = exact_[idx].ToDouble();
      }
    }
  }

  int types() const { return types_; }

  // Every present type t has sum_u alpha[u][t] * units[u] <= capacity.
  bool Fits(const std::vector<std::int64_t>& units, std::int64_t capacity) const {
    const double cap = static_cast<double>(capacity);
    for (int t = 0; t < types_; ++t) {
      if (units[t] == 0) continue;
      double sum = 0.0;
      for (int u = 0; u < types_; ++u) {
        if (units[u] != 0) sum += approx_[Index(u, t)] * static_cast<double>(units[u]);
      }
      if (sum > cap * (1 + 1e-9)) return false;
      if (sum >= cap * (1 - 1e-9)) {
        Rational exact_sum(0);
        for (int u = 0; u < types_; ++u) {
          if (units[u] != 0) exact_sum += exact_[Index(u, t)] * Rational(units[u]);
        }
        if (exact_sum > Rational(capacity)) return false;
      }
    }
    return true;
  }

 private:
  std::size_t Index(int from, int to) const {
    return static_cast<std::size_t>(from) * types_ + to;
  }

  int types_;
  std::vector<double> approx_;
  std::vector<Rational> exact_;
};

std::int64_t Capacity(const PtasParams& params) {
  return params.scale * params.scale;  // C expressed in class units
}

// Per-type class units and presence of one machine configuration.
std::vector<std::int64_t> Units(const SizeClassConfig& shape,
                                const MachineConfig& config, int types) {
  std::vector<std::int64_t> units(types, 0);
  for (std::size_t d = 0; d < shape.kinds.size(); ++d) {
    units[shape.kinds[d].type] += config[d] * shape.kinds[d].size_class;
  }
  return units;
}

void CheckGuards(const PtasParams& params, const PtasLimits& limits) {
  const std::int64_t classes = params.scale * params.scale;
  if (classes > limits.max_classes) {
    throw Error(ErrorCode::kLimitExceeded,
                "ptas: (gamma k)^2 = " + std::to_string(classes) +
                    " size classes exceed the limit of " +
                    std::to_string(limits.max_classes));
  }
}

}  // namespace

Rational Gamma(const AlphaMatrix& alpha) {
  Rational max_entry(0);
  Rational min_diag = Rational::FromDouble(alpha.at(0, 0));
  for (int a = 0; a < alpha.type_count(); ++a) {
    for (int b = 0; b < alpha.type_count(); ++b) {
      max_entry = std::max(max_entry, Rational::FromDouble(alpha.at(a, b)));
    }
    min_diag = std::min(min_diag, Rational::FromDouble(alpha.at(a, a)));
  }
  if (min_diag == Rational(0)) {
    throw Error(ErrorCode::kPrecondition, "ptas: needs alpha[t][t] > 0 for every type");
  }
  return Rational(alpha.type_count()) * max_entry * (Rational(2) + Rational(1) / min_diag);
}

Rational PtasParams::long_threshold() const {
  return target_cost / Rational(scale);
}

Rational PtasParams::class_width() const {
  return target_cost / Rational(scale * scale);
}

PtasParams PtasParams::For(const Instance& instance, const Rational& target_cost,
                           int precision) {
  if (precision < 1) {
    throw Error(ErrorCode::kPrecondition, "ptas: precision k must be >= 1");
  }
  if (target_cost <= Rational(0)) {
    throw Error(ErrorCode::kPrecondition, "ptas: target cost must be positive");
  }
  PtasParams p;
  p.target_cost = target_cost;
  p.precision = precision;
  p.gamma = Gamma(instance.alpha());
  const Int scale = (p.gamma * Rational(precision)).Ceil();
  if (scale > 1'000'000'000) {
    throw Error(ErrorCode::kLimitExceeded, "ptas: gamma * k is too large");
  }
  p.scale = static_cast<std::int64_t>(scale);
  return p;
}

RoundedInstance BuildRoundedInstance(const Instance& instance,
                                     const PtasParams& params) {
  const int T = instance.type_count();
  const Int G = params.scale;
  const Int c_num = params.target_cost.num();
  const Int c_den = params.target_cost.den();

  RoundedInstance out;
  out.short_tasks.assign(T, {});
  out.short_load.assign(T, 0);
  out.container_count.assign(T, 0);
  out.removed_containers.assign(T, 0);

  // (type, container, class) -> task ids
  std::map<std::tuple<TypeId, bool, std::int64_t>, std::vector<std::size_t>> kinds;
  for (std::size_t i = 0; i < instance.task_count(); ++i) {
    const Task& t = instance.task(i);
    // long iff p >= C/G  <=>  p * G * c_den >= c_num
    if (Int(t.size) * G * c_den >= c_num) {
      const Int size_class = (Int(t.size) * G * G * c_den) / c_num;  // floor(p G^2 / C)
      kinds[{t.type, false, static_cast<std::int64_t>(size_class)}].push_back(i);
    } else {
      out.short_tasks[t.type].push_back(i);
      out.short_load[t.type] += t.size;
    }
  }

  for (int t = 0; t < T; ++t) {
    auto& ids = out.short_tasks[t];
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return instance.task(a).size > instance.task(b).size;
    });
    if (out.short_load[t] == 0) continue;
    // ceil(W_s / (C/G)) containers: the full ones plus a shorter last one.
    const Int scaled = Int(out.short_load[t]) * G * c_den;
    const Int count = (scaled + c_num - 1) / c_num;
    out.container_count[t] = static_cast<int>(count);
    out.removed_containers[t] = std::min(instance.machines(), out.container_count[t]);
    const int remaining = out.container_count[t] - out.removed_containers[t];
    if (remaining > 0) {
      kinds[{t, true, static_cast<std::int64_t>(G)}].resize(remaining);
    }
  }

  for (auto& [key, ids] : kinds) {
    const auto& [type, container, size_class] = key;
    out.config.kinds.push_back(ItemKind{type, size_class, container});
    out.config.counts.push_back(static_cast<int>(ids.size()));
    out.long_tasks.push_back(container ? std::vector<std::size_t>{} : ids);
  }
  return out;
}

bool IsFeasibleMachine(const SizeClassConfig& shape, const MachineConfig& config,
                       const AlphaMatrix& alpha, const PtasParams& params) {
  const ExactAlpha exact(alpha);
  return exact.Fits(Units(shape, config, alpha.type_count()), Capacity(params));
}

DpSolution DpMinMachines(const SizeClassConfig& config, const AlphaMatrix& alpha,
                         const PtasParams& params, const PtasLimits& limits) {
  const std::size_t D = config.kinds.size();
  DpSolution out;
  if (D == 0) {
    out.machines = 0;
    out.states = 1;
    return out;
  }

  std::vector<std::size_t> stride(D);
  std::size_t states = 1;
  for (std::size_t d = 0; d < D; ++d) {
    stride[d] = states;
    const std::size_t radix = static_cast<std::size_t>(config.counts[d]) + 1;
    if (states > limits.max_states / radix) {
      throw Error(ErrorCode::kLimitExceeded,
                  "ptas: configuration lattice exceeds " +
                      std::to_string(limits.max_states) + " states");
    }
    states *= radix;
  }
  out.states = states;

  // All nonzero single-machine configurations within the counts. Feasibility
  // is monotone (alpha >= 0), so infeasible prefixes are cut.
  const ExactAlpha exact(alpha);
  const int T = alpha.type_count();
  const std::int64_t capacity = Capacity(params);
  std::vector<MachineConfig> configs;
  std::vector<std::size_t> offsets;
  MachineConfig current(D, 0);
  std::vector<std::int64_t> units(T, 0);
  auto enumerate = [&](auto& self, std::size_t d, std::size_t offset) -> void {
    if (d == D) {
      if (offset != 0) {
        configs.push_back(current);
        offsets.push_back(offset);
      }
      return;
    }
    const ItemKind& kind = config.kinds[d];
    for (int s = 0; s <= config.counts[d]; ++s) {
      if (s > 0) {
        units[kind.type] += kind.size_class;
        if (!exact.Fits(units, capacity)) {
          units[kind.type] -= static_cast<std::int64_t>(s) * kind.size_class;
          current[d] = 0;
          return;
        }
      }
      current[d] = s;
      self(self, d + 1, offset + static_cast<std::size_t>(s) * stride[d]);
    }
    units[kind.type] -= static_cast<std::int64_t>(config.counts[d]) * kind.size_class;
    current[d] = 0;
  };
  enumerate(enumerate, 0, 0);
  out.configurations = configs.size();

  // Some machine must host an item of the lowest nonzero dimension, so only
  // configurations containing one are tried.
  std::vector<std::vector<std::uint32_t>> by_dim(D);
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t d = 0; d < D; ++d) {
      if (configs[c][d] > 0) {
        by_dim[d].push_back(static_cast<std::uint32_t>(c));
        break;
      }
    }
  }
  // by_dim[d] holds configurations whose lowest nonzero dimension is d; a
  // state whose lowest nonzero dimension is d0 needs a configuration using
  // d0, and any configuration using d0 that fits has its lowest nonzero
  // dimension at d0 too.

  constexpr std::uint16_t kInf = std::numeric_limits<std::uint16_t>::max();
  std::vector<std::uint16_t> dp(states, kInf);
  std::vector<std::uint32_t> choice(states, 0);
  dp[0] = 0;
  std::vector<int> comps(D);
  std::uint64_t work = 0;
  for (std::size_t idx = 1; idx < states; ++idx) {
    std::size_t rest = idx;
    std::size_t d0 = D;
    for (std::size_t d = 0; d < D; ++d) {
      const std::size_t radix = static_cast<std::size_t>(config.counts[d]) + 1;
      comps[d] = static_cast<int>(rest % radix);
      rest /= radix;
      if (d0 == D && comps[d] > 0) d0 = d;
    }
    std::uint16_t best = kInf;
    std::uint32_t best_choice = 0;
    const auto& candidates = by_dim[d0];
    work += candidates.size();
    if (work > limits.max_work) {
      throw Error(ErrorCode::kLimitExceeded, "ptas: dynamic program exceeds work budget");
    }
    for (std::uint32_t c : candidates) {
      const MachineConfig& cfg = configs[c];
      bool fits = true;
      for (std::size_t d = d0; d < D && fits; ++d) fits = cfg[d] <= comps[d];
      if (!fits) continue;
      const std::uint16_t sub = dp[idx - offsets[c]];
      if (sub != kInf && sub + 1 < best) {
        best = static_cast<std::uint16_t>(sub + 1);
        best_choice = c;
      }
    }
    dp[idx] = best;
    choice[idx] = best_choice;
  }

  const std::size_t full = states - 1;
  if (dp[full] == kInf) return out;
  out.machines = dp[full];
  for (std::size_t idx = full; idx != 0; idx -= offsets[choice[idx]]) {
    out.machine_configs.push_back(configs[choice[idx]]);
  }
  return out;
}

std::optional<Allocation> PtasFeasible(const Instance& instance,
                                       const PtasParams& params,
                                       const PtasLimits& limits) {
  CheckGuards(params, limits);
  const int m = instance.machines();
  const int T = instance.type_count();
  const RoundedInstance rounded = BuildRoundedInstance(instance, params);
  const SizeClassConfig& shape = rounded.config;
  const DpSolution dp = DpMinMachines(shape, instance.alpha(), params, limits);
  if (!dp.machines || *dp.machines > m) return std::nullopt;

  // Per machine: counts per kind, plus the number of containers per type.
  std::vector<MachineConfig> machine(m, MachineConfig(shape.kinds.size(), 0));
  for (std::size_t k = 0; k < dp.machine_configs.size(); ++k) {
    machine[k] = dp.machine_configs[k];
  }
  std::vector<std::vector<int>> containers(m, std::vector<int>(T, 0));
  std::vector<std::int64_t> rounded_load(m, 0);
  for (int k = 0; k < m; ++k) {
    for (std::size_t d = 0; d < shape.kinds.size(); ++d) {
      rounded_load[k] += machine[k][d] * shape.kinds[d].size_class;
      if (shape.kinds[d].container) {
        containers[k][shape.kinds[d].type] += machine[k][d];
      }
    }
  }

  // Add the removed containers back, at most one per type and machine; when
  // fewer than m were removed they go to the machines with the lowest
  // rounded load.
  for (int t = 0; t < T; ++t) {
    const int extra = rounded.removed_containers[t];
    if (extra == 0) continue;
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return rounded_load[a] < rounded_load[b];
    });
    for (int j = 0; j < extra; ++j) {
      ++containers[order[j]][t];
      rounded_load[order[j]] += params.scale;
    }
  }

  Allocation alloc{std::vector<MachineId>(instance.task_count(), -1)};

  // Replace the i containers of type t on a machine by short tasks of total
  // load at least i * C/G (and below (i + 1) * C/G).
  const Int G = params.scale;
  const Int c_num = params.target_cost.num();
  const Int c_den = params.target_cost.den();
  for (int t = 0; t < T; ++t) {
    const auto& ids = rounded.short_tasks[t];
    std::size_t next = 0;
    for (int k = 0; k < m && next < ids.size(); ++k) {
      const Int target = containers[k][t];
      Int load = 0;
      // load < i * C / G  <=>  load * G * c_den < i * c_num
      while (next < ids.size() && load * G * c_den < target * c_num) {
        alloc.assignment[ids[next]] = k;
        load += instance.task(ids[next]).size;
        ++next;
      }
    }
    if (next != ids.size()) {
      throw std::logic_error("ptas: short tasks left after container replacement");
    }
  }

  // Long tasks take the slots of their kind in machine order.
  for (std::size_t d = 0; d < shape.kinds.size(); ++d) {
    if (shape.kinds[d].container) continue;
    std::size_t next = 0;
    for (int k = 0; k < m; ++k) {
      for (int s = 0; s < machine[k][d]; ++s) {
        alloc.assignment[rounded.long_tasks[d][next++]] = k;
      }
    }
  }
  return alloc;
}

PtasResult PtasOptimize(const Instance& instance, int precision,
                        const PtasLimits& limits) {
  const InstanceStats stats = ComputeStats(instance);
  const AlphaMatrix& alpha = instance.alpha();
  // No allocation is cheaper than the largest task alone; every allocation
  // costs at most W * alpha_max.
  const Rational lo_cost =
      Rational(stats.max_size) * Rational::FromDouble(alpha.min_diagonal());
  const Rational hi_cost =
      Rational(stats.total_load) * Rational::FromDouble(alpha.max_entry());

  PtasResult result;
  auto probe = [&](std::int64_t a) {
    ++result.probes;
    const Rational c(a, kGridDen);
    return PtasFeasible(instance, PtasParams::For(instance, c, precision), limits);
  };

  std::int64_t lo = std::max<std::int64_t>(
      1, static_cast<std::int64_t>((lo_cost * Rational(kGridDen)).Floor()));
  std::int64_t hi = static_cast<std::int64_t>((hi_cost * Rational(kGridDen)).Ceil());
  hi = std::max(hi, lo);

  CheckGuards(PtasParams::For(instance, Rational(hi, kGridDen), precision), limits);
  std::optional<Allocation> best = probe(hi);
  if (!best) throw std::logic_error("ptas: infeasible at W * alpha_max");
  if (auto at_lo = probe(lo)) {
    best = std::move(at_lo);
    hi = lo;
  }
  // Invariant: hi feasible, lo infeasible (or lo == hi).
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (auto found = probe(mid)) {
      hi = mid;
      best = std::move(found);
    } else {
      lo = mid;
    }
  }
  result.allocation = std::move(*best);
  result.target_cost = Rational(hi, kGridDen);
  result.max_cost = MaxCost(instance, result.allocation);
  return result;
}

}  // namespace mse::ptas
