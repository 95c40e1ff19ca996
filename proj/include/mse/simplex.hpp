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

// Dense two-phase primal simplex with Bland's pivoting rule.
//
//   minimize    objective . x
//   subject to  a_ub x <= b_ub,  a_eq x = b_eq,  0 <= x <= upper
//
// Finite upper bounds are turned into explicit rows.

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace mse::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<double> upper;  // empty: all +inf

  std::size_t variable_count() const { return objective.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0;
  std::vector<double> x;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 100'000;
  double tolerance = 1e-10;
};

LpSolution SimplexSolve(const LpProblem& problem, const SimplexOptions& options = {});

// Largest violation of any constraint or bound by `x`.
double MaxResidual(const LpProblem& problem, const std::vector<double>& x);

}  // namespace mse::lp
