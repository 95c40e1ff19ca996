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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "../common/oracle.hpp"
#include "mse/ptas.hpp"

using namespace mse;
using namespace mse::ptas;

namespace {

// Rounding rules restated over plain doubles: long iff p >= C/G, class
// floor(p G^2 / C), ceil(W_s G / C) containers per type.
struct NaiveRounding {
  std::vector<std::pair<int, long>> long_classes;  // (type, class)
  std::vector<int> containers;
};

NaiveRounding Naive(const Instance& inst, double C, long G) {
  NaiveRounding r;
  r.containers.assign(inst.type_count(), 0);
  std::vector<double> ws(inst.type_count(), 0);
  for (const Task& t : inst.tasks()) {
    if (t.size * G >= C - 1e-12) {
      r.long_classes.emplace_back(t.type, static_cast<long>(std::floor(t.size * G * G / C + 1e-12)));
    } else {
      ws[t.type] += t.size;
    }
  }
  for (int t = 0; t < inst.type_count(); ++t) {
    r.containers[t] = static_cast<int>(std::ceil(ws[t] * G / C - 1e-12));
  }
  std::sort(r.long_classes.begin(), r.long_classes.end());
  return r;
}

}  // namespace

TEST_CASE("gamma and scale") {
  CHECK(Gamma(AlphaMatrix(1)) == Rational(3));
  CHECK(Gamma(AlphaMatrix{{1, 0.5}, {0.5, 1}}) == Rational(6));
  CHECK(Gamma(AlphaMatrix{{1, 1.5}, {1.5, 1}}) == Rational(9));
  const Instance inst({{4, 0}}, AlphaMatrix(1), 1);
  const PtasParams p = PtasParams::For(inst, Rational(9), 1);
  CHECK(p.scale == 3);
  CHECK(p.long_threshold() == Rational(3));
  CHECK(p.class_width() == Rational(1));
  CHECK(PtasParams::For(inst, Rational(9), 2).scale == 6);
  CHECK_THROWS_AS(PtasParams::For(inst, Rational(9), 0), Error);
  CHECK_THROWS_AS(PtasParams::For(inst, Rational(0), 1), Error);
}

TEST_CASE("rounding hand example") {
  const Instance inst({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2);
  const RoundedInstance r = BuildRoundedInstance(inst, PtasParams::For(inst, Rational(9), 1));
  REQUIRE(r.config.kinds.size() == 2);
  CHECK(r.config.kinds[0] == ItemKind{0, 3, false});
  CHECK(r.config.kinds[1] == ItemKind{0, 4, false});
  CHECK(r.config.counts == std::vector<int>{1, 1});
  CHECK(r.long_tasks[0] == std::vector<std::size_t>{1});
  CHECK(r.long_tasks[1] == std::vector<std::size_t>{0});
  CHECK(r.short_tasks[0] == std::vector<std::size_t>{2});
  CHECK(r.short_load[0] == 2);
  CHECK(r.container_count[0] == 1);
  CHECK(r.removed_containers[0] == 1);
}

TEST_CASE("rounding leaves long multiples of the class width unchanged") {
  // C = 36, G = 3: class width 4, long threshold 12.
  const Instance inst({{12, 0}, {16, 0}, {20, 0}}, AlphaMatrix(1), 2);
  const RoundedInstance r = BuildRoundedInstance(inst, PtasParams::For(inst, Rational(36), 1));
  std::vector<long> classes;
  for (std::size_t d = 0; d < r.config.kinds.size(); ++d) classes.push_back(r.config.kinds[d].size_class);
  CHECK(classes == std::vector<long>{3, 4, 5});
  CHECK(r.container_count[0] == 0);
}

TEST_CASE("rounding matches the naive restatement") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 500; ++rep) {
    const int T = 1 + static_cast<int>(rng() % 2);
    const AlphaMatrix alpha = T == 1 ? AlphaMatrix(1) : AlphaMatrix{{1, 0.5}, {0.5, 1}};
    std::vector<Task> tasks;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) tasks.push_back({1 + static_cast<Size>(rng() % 30), static_cast<int>(rng() % T)});
    const Instance inst(tasks, alpha, 1 + static_cast<int>(rng() % 3));
    const Rational C(static_cast<std::int64_t>(5 + rng() % 60));
    const int k = 1 + static_cast<int>(rng() % 2);
    const PtasParams p = PtasParams::For(inst, C, k);
    const RoundedInstance r = BuildRoundedInstance(inst, p);
    const NaiveRounding naive = Naive(inst, C.ToDouble(), static_cast<long>(p.scale));
    std::vector<std::pair<int, long>> got;
    for (std::size_t d = 0; d < r.config.kinds.size(); ++d) {
      if (r.config.kinds[d].container) {
        CHECK(r.config.kinds[d].size_class == p.scale);
        continue;
      }
      for (int c = 0; c < r.config.counts[d]; ++c) got.emplace_back(r.config.kinds[d].type, r.config.kinds[d].size_class);
    }
    CHECK(got == naive.long_classes);
    for (int t = 0; t < T; ++t) {
      CHECK(r.container_count[t] == naive.containers[t]);
      CHECK(r.removed_containers[t] == std::min(inst.machines(), naive.containers[t]));
    }
  }
}

TEST_CASE("dp minimum machines") {
  const AlphaMatrix one(1);
  const Instance dummy({{1, 0}}, one, 1);
  // C = 9, G = 3, class width 1.
  const PtasParams p = PtasParams::For(dummy, Rational(9), 1);
  SizeClassConfig empty;
  CHECK(DpMinMachines(empty, one, p).machines == 0);

  SizeClassConfig single{{ItemKind{0, 5, false}}, {1}};
  CHECK(DpMinMachines(single, one, p).machines == 1);

  // Two items of class 5: 10 > 9 >= 5, so they need two machines.
  SizeClassConfig pair{{ItemKind{0, 5, false}}, {2}};
  const DpSolution two = DpMinMachines(pair, one, p);
  CHECK(two.machines == 2);
  CHECK(two.machine_configs.size() == 2);

  // An item above C fits nowhere.
  SizeClassConfig huge{{ItemKind{0, 10, false}}, {1}};
  CHECK_FALSE(DpMinMachines(huge, one, p).machines.has_value());

  // 4 + 5 = 9 fits, 5 + 5 does not: three items of classes {4, 5, 5} need 2.
  SizeClassConfig mixed{{ItemKind{0, 4, false}, ItemKind{0, 5, false}}, {1, 2}};
  CHECK(DpMinMachines(mixed, one, p).machines == 2);
}

TEST_CASE("machine feasibility uses every present type's cost") {
  const AlphaMatrix alpha{{1, 2}, {0, 1}};
  const Instance dummy({{1, 0}}, alpha, 1);
  const PtasParams p = PtasParams::For(dummy, Rational(100), 1);
  const std::int64_t cap = p.scale * p.scale;
  SizeClassConfig shape{{ItemKind{0, 1, false}, ItemKind{1, 1, false}}, {static_cast<int>(cap), static_cast<int>(cap)}};
  // Type 1 cost = 2 * U0 + U1.
  CHECK(IsFeasibleMachine(shape, {static_cast<int>(cap / 2), 0}, alpha, p));
  CHECK(IsFeasibleMachine(shape, {static_cast<int>(cap), 0}, alpha, p));
  CHECK_FALSE(IsFeasibleMachine(shape, {static_cast<int>(cap / 2), 1}, alpha, p));
  CHECK(IsFeasibleMachine(shape, {static_cast<int>(cap / 2) - 1, 1}, alpha, p));
}

TEST_CASE("decision procedure") {
  const Instance inst({{6, 0}, {5, 0}, {4, 0}}, AlphaMatrix(1), 2);
  // Below p_max nothing fits.
  CHECK_FALSE(PtasFeasible(inst, PtasParams::For(inst, Rational(5), 1)).has_value());
  const auto at_opt = PtasFeasible(inst, PtasParams::For(inst, Rational(9), 1));
  REQUIRE(at_opt);
  CHECK(MaxCost(inst, *at_opt) <= 18);

  const Instance lone({{7, 0}}, AlphaMatrix(1), 3);
  const auto a = PtasFeasible(lone, PtasParams::For(lone, Rational(7), 1));
  REQUIRE(a);
  CHECK(a->assignment == std::vector<MachineId>{0});
}

TEST_CASE("decision procedure with short tasks") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 150; ++rep) {
    std::vector<Task> tasks;
    const int n = 2 + static_cast<int>(rng() % 7);
    for (int i = 0; i < n; ++i) tasks.push_back({1 + static_cast<Size>(rng() % 4), static_cast<int>(rng() % 2)});
    tasks.push_back({20, 0});
    const Instance inst(tasks, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 1 + static_cast<int>(rng() % 3));
    const double opt = oracle::BruteForceOpt(inst);
    for (int k = 1; k <= 2; ++k) {
      const Rational c = Rational::FromDouble(opt);
      const auto a = PtasFeasible(inst, PtasParams::For(inst, c, k));
      REQUIRE(a);
      CHECK(IsValidAllocation(inst, *a));
      CHECK(MaxCost(inst, *a) <= opt * (1 + 1.0 / k) + 1e-9);
    }
  }
}

TEST_CASE("optimize within (1 + 1/k) of the optimum") {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 60; ++rep) {
    const int T = 1 + static_cast<int>(rng() % 2);
    std::vector<Task> tasks;
    const int n = T + static_cast<int>(rng() % (9 - T));
    for (int i = 0; i < n; ++i) tasks.push_back({1 + static_cast<Size>(rng() % 10), i < T ? i : static_cast<int>(rng() % T)});
    const Instance inst(tasks, T == 1 ? AlphaMatrix(1) : AlphaMatrix{{1, 0.5}, {0.5, 1}},
                        1 + static_cast<int>(rng() % 3));
    const double opt = oracle::BruteForceOpt(inst);
    for (int k = 1; k <= 3; ++k) {
      const PtasResult r = PtasOptimize(inst, k);
      CHECK(r.max_cost <= (1 + 1.0 / k) * opt + 1e-6);
      CHECK(r.target_cost.ToDouble() <= opt + 1e-6);
      CHECK(r.probes > 1);
    }
  }
}

TEST_CASE("n = m gives one task per machine") {
  const Instance inst({{5, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 3);
  CHECK(PtasOptimize(inst, 1).max_cost == doctest::Approx(5));
}

TEST_CASE("size-class guard") {
  const Instance clash({{3, 0}, {2, 1}}, AlphaMatrix{{1, 2}, {2, 1}}, 2);
  try {
    PtasOptimize(clash, 2);  // G = 24, G^2 = 576
    FAIL("expected the guard to refuse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLimitExceeded);
  }
  PtasLimits loose;
  loose.max_classes = 1000;
  CHECK(PtasOptimize(clash, 2, loose).max_cost == doctest::Approx(3));
}
