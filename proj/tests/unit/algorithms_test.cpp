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
#include "mse/algorithms.hpp"

using namespace mse;
using namespace mse::alg;

namespace {

std::vector<Size> MachineTotals(const Instance& inst, const Allocation& a) {
  std::vector<Size> out(inst.machines(), 0);
  for (std::size_t i = 0; i < inst.task_count(); ++i) out[a.assignment[i]] += inst.task(i).size;
  return out;
}

Instance RandomInstance(std::mt19937_64& rng, int T, const AlphaMatrix& alpha, int max_n, int m) {
  const int n = T + static_cast<int>(rng() % (max_n - T + 1));
  std::vector<Task> tasks;
  for (int i = 0; i < n; ++i) {
    tasks.push_back({1 + static_cast<Size>(rng() % 15), i < T ? i : static_cast<int>(rng() % T)});
  }
  std::shuffle(tasks.begin(), tasks.end(), rng);
  return Instance(tasks, alpha, m);
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kParse;
}

}  // namespace

TEST_CASE("lpt hand traces") {
  const std::vector<Size> a = {4, 3, 2};
  CHECK(Lpt(a, 2) == std::vector<MachineId>{0, 1, 1});
  const std::vector<Size> b = {5, 4, 3, 2, 2};
  const auto mb = Lpt(b, 2);
  std::vector<Size> loads(2, 0);
  for (std::size_t i = 0; i < b.size(); ++i) loads[mb[i]] += b[i];
  CHECK(loads == std::vector<Size>{9, 7});
  CHECK(oracle::BruteForceOpt(Instance({{5, 0}, {4, 0}, {3, 0}, {2, 0}, {2, 0}}, AlphaMatrix(1), 2)) == 8);
  const std::vector<Size> c = {1};
  CHECK(Lpt(c, 3) == std::vector<MachineId>{0});
  CHECK(Lpt(std::vector<Size>{}, 2).empty());
}

TEST_CASE("lpt ties go to the lowest index") {
  const std::vector<Size> s = {2, 3, 2, 3};
  // order: 3 (idx 1), 3 (idx 3), 2 (idx 0), 2 (idx 2)
  CHECK(Lpt(s, 2) == std::vector<MachineId>{0, 0, 1, 1});
}

TEST_CASE("sched mixed ignores types") {
  const Instance single({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2);
  const std::vector<Size> sizes = {4, 3, 2};
  CHECK(SchedMixed(single).assignment == Lpt(sizes, 2));
  const Instance m1({{4, 0}, {2, 1}}, AlphaMatrix{{1, 2}, {2, 1}}, 1);
  CHECK(SchedMixed(m1).assignment == std::vector<MachineId>{0, 0});

  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const Instance inst = RandomInstance(rng, 2, AlphaMatrix{{1, 1}, {1, 1}}, 9, m);
    std::vector<Size> s;
    for (const Task& t : inst.tasks()) s.push_back(t.size);
    CHECK(MaxCost(inst, SchedMixed(inst)) == doctest::Approx(double(oracle::LptMakespan(s, m))));
  }
}

TEST_CASE("juxtapose merges per-type lpt with alternating orientation") {
  const Instance inst({{6, 0}, {4, 0}, {5, 1}, {3, 1}}, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 2);
  const LoadMatrix l = MachineTypeLoads(inst, SchedJuxtapose(inst));
  CHECK(l.at(0, 0) == 6);
  CHECK(l.at(0, 1) == 3);
  CHECK(l.at(1, 0) == 4);
  CHECK(l.at(1, 1) == 5);

  const Instance single({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2);
  CHECK(SchedJuxtapose(single) == SchedMixed(single));
  const Instance m1({{4, 0}, {2, 1}, {1, 1}}, AlphaMatrix(2), 1);
  CHECK(SchedJuxtapose(m1).assignment == std::vector<MachineId>{0, 0, 0});
}

TEST_CASE("juxtapose parity counts only types that have tasks") {
  // Type 1 is empty, so type 2 is the second present type and is reversed.
  const Instance inst({{6, 0}, {4, 0}, {5, 2}, {3, 2}}, AlphaMatrix(3), 2);
  const LoadMatrix l = MachineTypeLoads(inst, SchedJuxtapose(inst));
  CHECK(l.at(0, 2) == 3);
  CHECK(l.at(1, 2) == 5);
}

TEST_CASE("best schedule takes the cheaper of mixed and juxtapose") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = RandomInstance(rng, 2, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 9,
                                         1 + static_cast<int>(rng() % 4));
    const double mix = MaxCost(inst, SchedMixed(inst));
    const double jux = MaxCost(inst, SchedJuxtapose(inst));
    const Allocation best = BestSchedule(inst);
    CHECK(MaxCost(inst, best) == doctest::Approx(std::min(mix, jux)));
    if (mix <= jux) CHECK(best == SchedMixed(inst));
  }
}

TEST_CASE("greedy dedicated") {
  const Instance clash({{4, 0}, {3, 0}, {2, 1}, {2, 1}}, AlphaMatrix{{1, 2}, {2, 1}}, 2);
  const Allocation a = GreedyDedicated(clash, InnerAlgorithm::kBest);
  CHECK(a.assignment == std::vector<MachineId>{0, 0, 1, 1});
  CHECK(MaxCost(clash, a) == doctest::Approx(7));

  // One cluster: the inner algorithm on all machines.
  const Instance compat({{4, 0}, {3, 1}, {2, 0}, {2, 1}}, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 3);
  CHECK(GreedyDedicated(compat, InnerAlgorithm::kMixed) == SchedMixed(compat));
  CHECK(GreedyDedicated(compat, InnerAlgorithm::kJuxtapose) == SchedJuxtapose(compat));

  const Instance tight({{1, 0}, {1, 1}, {1, 2}}, AlphaMatrix{{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}, 2);
  CHECK(CodeOf([&] { GreedyDedicated(tight, InnerAlgorithm::kBest); }) == ErrorCode::kPrecondition);

  // Empty clusters take no machines.
  const Instance sparse({{5, 0}, {1, 0}}, AlphaMatrix{{1, 2}, {2, 1}}, 1);
  CHECK(GreedyDedicated(sparse, InnerAlgorithm::kBest).assignment == std::vector<MachineId>{0, 0});
}

TEST_CASE("greedy dedicated picks the best composition") {
  // Reference: every composition with m_k >= 1, cluster blocks in order.
  std::mt19937_64 rng(3);
  const AlphaMatrix alpha{{1, 0.5, 1.5}, {0.5, 1, 1.5}, {1.5, 1.5, 1}};
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Instance inst = RandomInstance(rng, 3, alpha, 10, m);
    const Clustering cl = CompatibilityClusters(alpha);
    std::vector<std::vector<std::size_t>> ids(cl.cluster_count);
    for (std::size_t i = 0; i < inst.task_count(); ++i) ids[cl.cluster_of[inst.task(i).type]].push_back(i);
    double best = 1e300;
    for (int m0 = 1; m0 < m; ++m0) {
      double cost = 0;
      int used[2] = {m0, m - m0};
      for (int c = 0; c < 2; ++c) {
        const Instance sub = SubInstance(inst, ids[c], used[c]);
        cost = std::max(cost, MaxCost(sub, SchedMixed(sub)));
      }
      best = std::min(best, cost);
    }
    CHECK(MaxCost(inst, GreedyDedicated(inst, InnerAlgorithm::kMixed)) == doctest::Approx(best));
  }
}

TEST_CASE("fill greedy") {
  const Instance clash({{4, 0}, {3, 0}, {2, 1}, {2, 1}}, AlphaMatrix{{1, 2}, {2, 1}}, 3);
  const double opt = oracle::BruteForceOpt(clash);
  CHECK(opt == doctest::Approx(4));
  const Allocation a = FillGreedy(clash);
  CHECK(IsValidAllocation(clash, a));
  CHECK(MaxCost(clash, a) <= 12 * opt + 1e-9);

  // n <= m: the bisection reaches p_max, one task per machine.
  const Instance spread({{5, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 4);
  FillGreedyTrace trace;
  const Allocation s = FillGreedy(spread, &trace);
  CHECK(MaxCost(spread, s) == doctest::Approx(5));
  CHECK(trace.threshold == 5);
  CHECK(trace.threshold < trace.max_threshold);

  const Instance small_m({{1, 0}, {1, 1}}, AlphaMatrix(2), 2);
  CHECK(CodeOf([&] { FillGreedy(small_m); }) == ErrorCode::kPrecondition);
}

TEST_CASE("fill greedy threshold is the smallest feasible one") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const int T = 1 + static_cast<int>(rng() % 2);
    const int m = T + 1 + static_cast<int>(rng() % 3);
    const Instance inst = RandomInstance(rng, T, T == 1 ? AlphaMatrix(1) : AlphaMatrix{{1, 2}, {2, 1}}, 10, m);
    FillGreedyTrace trace;
    FillGreedy(inst, &trace);
    CHECK(FillAtThreshold(inst, trace.threshold).feasible);
    for (Size t = 1; t < trace.threshold; ++t) CHECK_FALSE(FillAtThreshold(inst, t).feasible);
  }
}

TEST_CASE("greedy for two types") {
  const Instance easy({{3, 0}, {3, 1}}, AlphaMatrix{{1, 1.5}, {1.5, 1}}, 2);
  const Allocation a = GreedyFor2Types(easy);
  CHECK(a.assignment == std::vector<MachineId>{0, 1});
  CHECK(MaxCost(easy, a) == doctest::Approx(3));

  const Instance bound({{5, 0}, {2, 0}, {1, 1}}, AlphaMatrix{{1, 1.5}, {1.5, 1}}, 2);
  GreedyFor2TypesTrace trace;
  GreedyFor2Types(bound, {}, &trace);
  CHECK(trace.threshold_bound == doctest::Approx(9));

  const Instance three({{1, 0}, {1, 1}, {1, 2}}, AlphaMatrix{{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}, 3);
  CHECK(CodeOf([&] { GreedyFor2Types(three); }) == ErrorCode::kPrecondition);

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 300; ++rep) {
    const double alpha = 1.0 + static_cast<double>(1 + rng() % 20) / 20.0;
    const Instance inst = RandomInstance(rng, 2, AlphaMatrix{{1, alpha}, {alpha, 1}}, 9,
                                         2 + static_cast<int>(rng() % 2));
    for (auto policy : {OverflowPolicy::kLastMachineOfFirstGroup, OverflowPolicy::kFirstMachineOfFirstGroup}) {
      const Allocation g = GreedyFor2Types(inst, {policy, true});
      CHECK(MaxCost(inst, g) <= 2 * oracle::BruteForceOpt(inst) + 1e-9);
    }
  }
}

TEST_CASE("exact solver") {
  const Instance inst({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2);
  CHECK(ExactSolve(inst).max_cost == doctest::Approx(5));

  std::vector<Task> many(13, Task{1, 0});
  CHECK(CodeOf([&] { ExactSolve(Instance(many, AlphaMatrix(1), 2)); }) == ErrorCode::kLimitExceeded);
  std::vector<Task> wide(8, Task{1, 0});
  CHECK(CodeOf([&] { ExactSolve(Instance(wide, AlphaMatrix(1), 6)); }) == ErrorCode::kLimitExceeded);
  // More machines than tasks only matters up to n.
  std::vector<Task> few(4, Task{2, 0});
  CHECK(ExactSolve(Instance(few, AlphaMatrix(1), 50)).max_cost == doctest::Approx(2));

  std::mt19937_64 rng(6);
  const AlphaMatrix alphas[] = {AlphaMatrix{{1, 0.5}, {0.5, 1}}, AlphaMatrix{{1, 3}, {3, 1}},
                                AlphaMatrix{{1, 0.2}, {1.7, 1}}};
  for (int rep = 0; rep < 300; ++rep) {
    const Instance r = RandomInstance(rng, 2, alphas[rep % 3], 8, 1 + static_cast<int>(rng() % 3));
    const ExactResult e = ExactSolve(r);
    CHECK(e.max_cost == doctest::Approx(oracle::BruteForceOpt(r)));
    CHECK(MaxCost(r, e.allocation) == doctest::Approx(e.max_cost));
  }
}

TEST_CASE("clashing optimum needs at most one shared machine") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const Instance r = RandomInstance(rng, 2, AlphaMatrix{{1, 3}, {3, 1}}, 7, 2 + static_cast<int>(rng() % 2));
    CHECK(oracle::MinSharedAmongOptima(r, ExactSolve(r).max_cost) <= 1);
  }
}

TEST_CASE("registry") {
  CHECK(IsKnownAlgorithm("best"));
  CHECK(IsKnownAlgorithm("ptas:k=2"));
  CHECK_FALSE(IsKnownAlgorithm("ptas:k=0"));
  CHECK_FALSE(IsKnownAlgorithm("ptas:k=<int>"));
  CHECK_FALSE(IsKnownAlgorithm("nope"));
  const Instance inst({{4, 0}, {3, 1}, {2, 0}}, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 2);
  for (const char* name : {"mix", "jux", "best", "ded", "ded-mix", "ded-jux", "ded-best", "g2", "exact", "ptas:k=1"}) {
    const AlgorithmResult r = RunAlgorithm(name, inst);
    CHECK(r.algorithm_name == name);
    CHECK(r.max_cost == doctest::Approx(MaxCost(inst, r.allocation)));
    // Deterministic.
    CHECK(RunAlgorithm(name, inst).allocation == r.allocation);
  }
  CHECK(CodeOf([&] { RunAlgorithm("fill", inst); }) == ErrorCode::kPrecondition);
  CHECK(CodeOf([&] { RunAlgorithm("bogus", inst); }) == ErrorCode::kPrecondition);
}
