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

#include "mse/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mse::lp {
namespace {

enum class RowSense { kLessEqual, kEqual };

class Tableau {
 public:
  Tableau(const LpProblem& p, const SimplexOptions& options)
      : options_(options), structural_(p.variable_count()) {
    // Collect rows as (coefficients, rhs, sense) with rhs >= 0 after a sign
    // flip; a flipped <= row becomes >= and gets a surplus plus artificial.
    struct Row {
      std::vector<double> a;
      double b;
      bool needs_slack;
      double slack_sign;
      bool needs_artificial;
    };
    std::vector<Row> rows;
    auto add = [&](const std::vector<double>& a, double b, RowSense sense) {
      if (a.size() != structural_) throw std::invalid_argument("lp: row width mismatch");
      Row r{a, b, sense == RowSense::kLessEqual, 1.0, sense == RowSense::kEqual};
      if (b < 0) {
        for (double& v : r.a) v = -v;
        r.b = -b;
        if (r.needs_slack) {
          r.slack_sign = -1.0;
          r.needs_artificial = true;
        }
      }
      rows.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < p.a_ub.size(); ++i) add(p.a_ub[i], p.b_ub[i], RowSense::kLessEqual);
    for (std::size_t i = 0; i < p.a_eq.size(); ++i) add(p.a_eq[i], p.b_eq[i], RowSense::kEqual);
    for (std::size_t j = 0; j < p.upper.size(); ++j) {
      if (std::isfinite(p.upper[j])) {
        std::vector<double> a(structural_, 0.0);
        a[j] = 1.0;
        add(a, p.upper[j], RowSense::kLessEqual);
      }
    }

    std::size_t slacks = 0, artificials = 0;
    for (const Row& r : rows) {
      slacks += r.needs_slack;
      artificials += r.needs_artificial;
    }
    rows_ = rows.size();
    first_artificial_ = structural_ + slacks;
    cols_ = first_artificial_ + artificials;
    data_.assign(rows_ * (cols_ + 1), 0.0);
    basis_.assign(rows_, 0);

    std::size_t slack = structural_, artificial = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Row& r = rows[i];
      std::copy(r.a.begin(), r.a.end(), &At(i, 0));
      At(i, cols_) = r.b;
      if (r.needs_slack) {
        At(i, slack) = r.slack_sign;
        if (r.slack_sign > 0) basis_[i] = slack;
        ++slack;
      }
      if (r.needs_artificial) {
        At(i, artificial) = 1.0;
        basis_[i] = artificial++;
      }
    }
  }

  LpSolution Solve(const std::vector<double>& objective) {
    LpSolution out;
    // Phase 1: minimize the sum of artificials.
    if (first_artificial_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
      const LpStatus status = Optimize(phase1, cols_, out.iterations);
      if (status != LpStatus::kOptimal) {
        out.status = status;
        return out;
      }
      if (ObjectiveValue(phase1) > 1e-9 * std::max(1.0, RhsScale())) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      DriveOutArtificials();
    }
    std::vector<double> cost(cols_, 0.0);
    std::copy(objective.begin(), objective.end(), cost.begin());
    out.status = Optimize(cost, first_artificial_, out.iterations);
    if (out.status != LpStatus::kOptimal) return out;
    out.x.assign(structural_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) out.x[basis_[i]] = std::max(0.0, At(i, cols_));
    }
    out.objective = 0.0;
    for (std::size_t j = 0; j < structural_; ++j) out.objective += objective[j] * out.x[j];
    return out;
  }

 private:
  double& At(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double At(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }

  double RhsScale() const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s = std::max(s, std::fabs(At(i, cols_)));
    return s;
  }

  double ObjectiveValue(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) v += cost[basis_[i]] * At(i, cols_);
    return v;
  }

  void Pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / At(row, col);
    for (std::size_t c = 0; c <= cols_; ++c) At(row, c) *= inv;
    At(row, col) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const double f = At(r, col);
      if (f == 0.0) continue;
      double* dst = &At(r, 0);
      const double* src = &At(row, 0);
      for (std::size_t c = 0; c <= cols_; ++c) dst[c] -= f * src[c];
      dst[col] = 0.0;
    }
    basis_[row] = col;
  }

  // Columns >= `allowed` never enter the basis.
  LpStatus Optimize(const std::vector<double>& cost, std::size_t allowed, int& iterations) {
    const double eps = options_.tolerance;
    std::vector<double> reduced(cols_);
    while (true) {
      // Reduced costs c_j - c_B B^-1 A_j; Bland: lowest eligible index.
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < allowed && entering == cols_; ++j) {
        double rc = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
          const double a = At(i, j);
          if (a != 0.0) rc -= cost[basis_[i]] * a;
        }
        if (rc < -eps) entering = j;
      }
      if (entering == cols_) return LpStatus::kOptimal;
      if (iterations >= options_.max_iterations) return LpStatus::kIterationLimit;
      ++iterations;

      std::size_t leaving = rows_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = At(i, entering);
        if (a <= eps) continue;
        const double ratio = At(i, cols_) / a;
        if (leaving == rows_ || ratio < best_ratio - eps ||
            (ratio <= best_ratio + eps && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_) return LpStatus::kUnbounded;
      Pivot(leaving, entering);
    }
  }

  void DriveOutArtificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::fabs(At(i, j)) > options_.tolerance) {
          Pivot(i, j);
          break;
        }
      }
      // A row left with its artificial basic is redundant; it stays at zero.
    }
  }

  SimplexOptions options_;
  std::size_t structural_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LpSolution SimplexSolve(const LpProblem& problem, const SimplexOptions& options) {
  if (!problem.upper.empty() && problem.upper.size() != problem.variable_count()) {
    throw std::invalid_argument("lp: upper bound count mismatch");
  }
  if (problem.a_ub.size() != problem.b_ub.size() || problem.a_eq.size() != problem.b_eq.size()) {
    throw std::invalid_argument("lp: rhs size mismatch");
  }
  Tableau tableau(problem, options);
  return tableau.Solve(problem.objective);
}

double MaxResidual(const LpProblem& p, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  for (std::size_t i = 0; i < p.a_ub.size(); ++i) {
    worst = std::max(worst, dot(p.a_ub[i]) - p.b_ub[i]);
  }
  for (std::size_t i = 0; i < p.a_eq.size(); ++i) {
    worst = std::max(worst, std::fabs(dot(p.a_eq[i]) - p.b_eq[i]));
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, -x[j]);
    if (!p.upper.empty()) worst = std::max(worst, x[j] - p.upper[j]);
  }
  return worst;
}

}  // namespace mse::lp
