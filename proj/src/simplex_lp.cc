// Copyright 2026 The Lastround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lastround/simplex_lp.h"

#include <cmath>
#include <limits>
#include <string>

namespace lastround {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-12;
constexpr double kRatioTieEps = 1e-13;
constexpr double kFeasibilityEps = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * (cols_ + 1) + j];
  }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void Pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, s) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double factor = at(i, s);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= factor * at(r, j);
      at(i, s) = 0.0;
    }
    basis_[r] = s;
  }

  // c_B^T (column j of the current tableau).
  double BasisDot(const std::vector<double>& cost, std::size_t j) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) acc += cost[basis_[i]] * at(i, j);
    return acc;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded };

PhaseResult RunPhase(Tableau& t, const std::vector<double>& cost,
                     const std::vector<bool>& may_enter, int max_pivots,
                     int& pivots) {
  std::vector<bool> in_basis(t.cols(), false);
  while (true) {
    std::fill(in_basis.begin(), in_basis.end(), false);
    for (std::size_t b : t.basis()) in_basis[b] = true;

    // Bland: lowest-index column with positive reduced cost.
    std::size_t entering = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!may_enter[j] || in_basis[j]) continue;
      if (cost[j] - t.BasisDot(cost, j) > kCostEps) {
        entering = j;
        break;
      }
    }
    if (entering == t.cols()) return PhaseResult::kOptimal;

    std::size_t leaving = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double coef = t.at(i, entering);
      if (coef <= kPivotEps) continue;
      const double ratio = t.rhs(i) / coef;
      if (ratio < best_ratio - kRatioTieEps) {
        best_ratio = ratio;
        leaving = i;
      } else if (ratio <= best_ratio + kRatioTieEps &&
                 t.basis()[i] < t.basis()[leaving]) {
        leaving = i;
      }
    }
    if (leaving == t.rows()) return PhaseResult::kUnbounded;

    if (++pivots > max_pivots) {
      throw ConvergenceError("simplex: pivot cap of " +
                             std::to_string(max_pivots) + " exceeded");
    }
    t.Pivot(leaving, entering);
  }
}

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp, int max_pivots) {
  const std::size_t num_vars = lp.objective.size();
  const std::size_t num_rows = lp.constraints.size();

  // Normalize to nonnegative right-hand sides.
  std::vector<LinearConstraint> rows = lp.constraints;
  std::vector<double> flip(num_rows, 1.0);
  std::size_t num_slack = 0;
  std::size_t num_artificial = 0;
  for (std::size_t k = 0; k < num_rows; ++k) {
    LinearConstraint& c = rows[k];
    if (c.coefficients.size() != num_vars) {
      throw std::invalid_argument("SolveLinearProgram: constraint width mismatch");
    }
    if (c.rhs < 0.0) {
      for (double& a : c.coefficients) a = -a;
      c.rhs = -c.rhs;
      flip[k] = -1.0;
      if (c.sense == Sense::kLessEqual) {
        c.sense = Sense::kGreaterEqual;
      } else if (c.sense == Sense::kGreaterEqual) {
        c.sense = Sense::kLessEqual;
      }
    }
    if (c.sense != Sense::kEqual) ++num_slack;
    if (c.sense != Sense::kLessEqual) ++num_artificial;
  }

  const std::size_t num_cols = num_vars + num_slack + num_artificial;
  const std::size_t first_artificial = num_vars + num_slack;
  Tableau t(num_rows, num_cols);
  // Column whose original entry is +/- e_k, and that sign.
  std::vector<std::size_t> unit_col(num_rows);
  std::vector<double> unit_sign(num_rows, 1.0);

  std::size_t next_slack = num_vars;
  std::size_t next_artificial = first_artificial;
  for (std::size_t k = 0; k < num_rows; ++k) {
    const LinearConstraint& c = rows[k];
    for (std::size_t j = 0; j < num_vars; ++j) t.at(k, j) = c.coefficients[j];
    t.rhs(k) = c.rhs;
    switch (c.sense) {
      case Sense::kLessEqual:
        t.at(k, next_slack) = 1.0;
        t.basis()[k] = next_slack;
        unit_col[k] = next_slack++;
        break;
      case Sense::kGreaterEqual:
        t.at(k, next_slack) = -1.0;
        unit_col[k] = next_slack++;
        unit_sign[k] = -1.0;
        t.at(k, next_artificial) = 1.0;
        t.basis()[k] = next_artificial++;
        break;
      case Sense::kEqual:
        t.at(k, next_artificial) = 1.0;
        t.basis()[k] = next_artificial;
        unit_col[k] = next_artificial++;
        break;
    }
  }

  LpSolution solution;
  int pivots = 0;

  if (num_artificial > 0) {
    std::vector<double> phase1_cost(num_cols, 0.0);
    for (std::size_t j = first_artificial; j < num_cols; ++j) phase1_cost[j] = -1.0;
    std::vector<bool> may_enter(num_cols, true);
    RunPhase(t, phase1_cost, may_enter, max_pivots, pivots);

    double infeasibility = 0.0;
    for (std::size_t i = 0; i < num_rows; ++i) {
      if (t.basis()[i] >= first_artificial) infeasibility += t.rhs(i);
    }
    if (infeasibility > kFeasibilityEps) {
      solution.status = LpStatus::kInfeasible;
      solution.pivots = pivots;
      return solution;
    }
    // Drive zero-valued artificials out of the basis where possible. A row
    // with no usable pivot is redundant and keeps its artificial at zero.
    for (std::size_t i = 0; i < num_rows; ++i) {
      if (t.basis()[i] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          t.Pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> cost(num_cols, 0.0);
  for (std::size_t j = 0; j < num_vars; ++j) cost[j] = lp.objective[j];
  std::vector<bool> may_enter(num_cols, true);
  for (std::size_t j = first_artificial; j < num_cols; ++j) may_enter[j] = false;
  if (RunPhase(t, cost, may_enter, max_pivots, pivots) == PhaseResult::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    solution.pivots = pivots;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.pivots = pivots;
  solution.primal.assign(num_vars, 0.0);
  for (std::size_t i = 0; i < num_rows; ++i) {
    if (t.basis()[i] < num_vars) solution.primal[t.basis()[i]] = t.rhs(i);
  }
  solution.objective = 0.0;
  for (std::size_t j = 0; j < num_vars; ++j) {
    solution.objective += lp.objective[j] * solution.primal[j];
  }
  solution.duals.resize(num_rows);
  for (std::size_t k = 0; k < num_rows; ++k) {
    solution.duals[k] = flip[k] * unit_sign[k] * t.BasisDot(cost, unit_col[k]);
  }
  return solution;
}

}  // namespace lastround
