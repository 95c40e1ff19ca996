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

#include <random>

#include "../common/oracle.hpp"
#include "mse/algorithms.hpp"
#include "mse/bounds.hpp"
#include "mse/instances.hpp"

using namespace mse;
using namespace mse::bounds;

namespace {

Instance TwoTypeLoads(Size w0, Size w1, double a, int m) {
  return Instance({{w0, 0}, {w1, 1}}, AlphaMatrix{{1, a}, {a, 1}}, m);
}

}  // namespace

TEST_CASE("simplex small problems") {
  lp::LpProblem p;
  p.objective = {1};
  p.a_ub = {{-1}};
  p.b_ub = {-5};
  const lp::LpSolution s = lp::SimplexSolve(p);
  CHECK(s.status == lp::LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(5));

  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, y <= 1.5
  lp::LpProblem q;
  q.objective = {-1, -1};
  q.a_ub = {{1, 2}, {3, 1}};
  q.b_ub = {4, 6};
  q.upper = {lp::kInfinity, 1.5};
  const lp::LpSolution t = lp::SimplexSolve(q);
  CHECK(t.status == lp::LpStatus::kOptimal);
  CHECK(t.objective == doctest::Approx(-2.8));
  CHECK(lp::MaxResidual(q, t.x) <= 1e-9);

  lp::LpProblem infeasible;
  infeasible.objective = {1};
  infeasible.a_eq = {{1}};
  infeasible.b_eq = {2};
  infeasible.upper = {1};
  CHECK(lp::SimplexSolve(infeasible).status == lp::LpStatus::kInfeasible);

  lp::LpProblem unbounded;
  unbounded.objective = {-1};
  unbounded.a_ub = {{-1}};
  unbounded.b_ub = {0};
  CHECK(lp::SimplexSolve(unbounded).status == lp::LpStatus::kUnbounded);

  lp::SimplexOptions tight;
  tight.max_iterations = 0;
  CHECK(lp::SimplexSolve(q, tight).status == lp::LpStatus::kIterationLimit);
}

TEST_CASE("p_max bound") {
  CHECK(LbPmax(Instance({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2)) == 4);
  CHECK(LbPmax(Instance({{7, 0}}, AlphaMatrix(1), 2)) == 7);
}

TEST_CASE("average load bound") {
  CHECK(LbAvgLoad(Instance({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2)) == doctest::Approx(4.5));
  try {
    LbAvgLoad(TwoTypeLoads(3, 3, 0.5, 2));
    FAIL("expected not-applicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotApplicable);
  }
}

TEST_CASE("LP bound examples") {
  const LpBound b = LbLpCompatible(TwoTypeLoads(6, 6, 0.5, 2));
  REQUIRE(b.value);
  CHECK(*b.value == doctest::Approx(4.5).epsilon(1e-9));
  CHECK(oracle::GridSearchLp({6, 6}, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 2) == doctest::Approx(4.5));

  const Instance single({{4, 0}, {3, 0}, {2, 0}}, AlphaMatrix(1), 2);
  CHECK(*LbLpCompatible(single).value == doctest::Approx(4.5));

  // m = 1: x is forced to 1.
  const Instance one({{4, 0}, {2, 1}}, AlphaMatrix{{1, 0.25}, {0.75, 1}}, 1);
  CHECK(*LbLpCompatible(one).value == doctest::Approx(std::max(4 + 0.75 * 2, 0.25 * 4 + 2)));
}

TEST_CASE("LP dimensions and feasibility of the solution") {
  const Instance inst({{4, 0}, {3, 1}, {2, 2}}, inst::CoefficientPreset(3, inst::Scenario::kCompatible), 3);
  const lp::LpProblem p = BuildLoadSplitLp(inst);
  CHECK(p.variable_count() == 3 * 3 + 1);
  CHECK(p.a_ub.size() + p.a_eq.size() == 3 * 3 + 3);
  const LpBound b = LbLpCompatible(inst);
  REQUIRE(b.value);
  for (std::size_t t = 0; t < 3; ++t) {
    double sum = 0;
    for (int k = 0; k < 3; ++k) sum += b.solution.x[t * 3 + k];
    CHECK(sum == doctest::Approx(1).epsilon(1e-9));
  }
}

TEST_CASE("LP bound agrees with the grid search when the optimum is on the grid") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 40; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const Size w0 = 1 + static_cast<Size>(rng() % 30), w1 = 1 + static_cast<Size>(rng() % 30);
    const double a = static_cast<double>(rng() % 21) / 20.0;
    const Instance inst = TwoTypeLoads(w0, w1, a, m);
    const double grid = oracle::GridSearchLp({double(w0), double(w1)}, inst.alpha(), m);
    CHECK(*LbLpCompatible(inst).value == doctest::Approx(grid).epsilon(1e-9));
  }
}

TEST_CASE("LP objective does not depend on machine labels") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const Instance inst({{1 + Size(rng() % 9), 0}, {1 + Size(rng() % 9), 1}, {1 + Size(rng() % 9), 2}},
                        inst::CoefficientPreset(3, inst::Scenario::kCompatible), 3);
    lp::LpProblem p = BuildLoadSplitLp(inst);
    const double base = lp::SimplexSolve(p).objective;
    // Relabel machines k -> (k + 1) mod m by permuting columns.
    auto permute = [](std::vector<double>& row) {
      std::vector<double> out = row;
      for (std::size_t t = 0; t < 3; ++t) {
        for (std::size_t k = 0; k < 3; ++k) out[t * 3 + (k + 1) % 3] = row[t * 3 + k];
      }
      row = out;
    };
    for (auto& row : p.a_ub) permute(row);
    for (auto& row : p.a_eq) permute(row);
    CHECK(lp::SimplexSolve(p).objective == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("cluster bound") {
  const AlphaMatrix compat = inst::CoefficientPreset(3, inst::Scenario::kCompatible);
  const Instance inst({{4, 0}, {3, 1}, {2, 2}}, compat, 2);
  const Clustering one = CompatibilityClusters(compat);
  CHECK(*LbMixedClusters(inst, one) == doctest::Approx(*LbLpCompatible(inst).value));
}

TEST_CASE("bound report") {
  const Instance clash({{4, 0}, {3, 0}, {2, 1}}, AlphaMatrix{{1, 2}, {2, 1}}, 2);
  const BoundReport c = ComputeBounds(clash);
  CHECK(c.avg_load_bound == doctest::Approx(4.5));
  CHECK(c.chosen == doctest::Approx(4.5));
  CHECK(c.source == "avg_load");
  CHECK_FALSE(c.lp_bound.has_value());

  const BoundReport p = ComputeBounds(Instance({{9, 0}, {1, 1}}, AlphaMatrix{{1, 0.5}, {0.5, 1}}, 4));
  CHECK(p.chosen == 9);
  CHECK(p.source == "pmax");
  CHECK(p.lp_bound.has_value());
  CHECK_FALSE(p.avg_load_bound.has_value());

  const Instance mixed({{4, 0}, {3, 1}, {5, 2}}, inst::CoefficientPreset(3, inst::Scenario::kMixed), 3);
  const BoundReport mr = ComputeBounds(mixed);
  CHECK(mr.cluster_bound.has_value());
  CHECK(mr.chosen >= mr.pmax_bound);
}

TEST_CASE("bounds never exceed the optimum on preset instances") {
  std::mt19937_64 rng(14);
  const inst::Scenario all[] = {inst::Scenario::kCompatible, inst::Scenario::kMixed,
                                inst::Scenario::kIncompatible, inst::Scenario::kClashing};
  for (int rep = 0; rep < 300; ++rep) {
    const int T = 3;
    const int n = 3 + static_cast<int>(rng() % 6);
    std::vector<Task> tasks;
    for (int i = 0; i < n; ++i) tasks.push_back({1 + Size(rng() % 12), i < T ? i : int(rng() % T)});
    const Instance inst(tasks, inst::CoefficientPreset(T, all[rep % 4]), 1 + int(rng() % 3));
    const double opt = oracle::BruteForceOpt(inst);
    CHECK(ComputeBounds(inst).chosen <= opt + 1e-6);
  }
}
