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

#include "lastround/minimax.h"

#include <algorithm>
#include <cmath>

#include "lastround/simplex_lp.h"

namespace lastround {

namespace {

// Slack on the optimal face for the secondary (maximin) programs. The value
// comes out of the primary LP with rounding error of a few ulps.
constexpr double kFaceSlack = 1e-11;

int PivotCap(std::size_t n, std::size_t m) {
  const auto s = static_cast<int>(n + m);
  return 10 * s * s;
}

// Entries below this are LP round-off (or face slack) rather than support.
constexpr double kSupportFloor = 1e-9;

SimplexVector CleanStrategy(const std::vector<double>& raw) {
  std::vector<double> w(raw.size());
  std::transform(raw.begin(), raw.end(), w.begin(),
                 [](double v) { return v < kSupportFloor ? 0.0 : v; });
  return SimplexVector::FromWeights(std::move(w));
}

std::size_t SupportSize(const SimplexVector& p) {
  return static_cast<std::size_t>(
      std::count_if(p.values().begin(), p.values().end(), [](double v) { return v > 0.0; }));
}

double MaxOf(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}

double MinOf(const std::vector<double>& v) {
  return *std::min_element(v.begin(), v.end());
}

// Maximize s subject to s <= p(k), sum p = 1, and the per-opponent-action
// constraints given by `face`.
std::optional<SimplexVector> MaximinOnFace(
    std::size_t dim, std::vector<LinearConstraint> face) {
  LinearProgram lp;
  lp.objective.assign(dim + 1, 0.0);
  lp.objective[dim] = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    LinearConstraint c;
    c.coefficients.assign(dim + 1, 0.0);
    c.coefficients[k] = -1.0;
    c.coefficients[dim] = 1.0;
    c.sense = Sense::kLessEqual;
    c.rhs = 0.0;
    lp.constraints.push_back(std::move(c));
  }
  for (LinearConstraint& c : face) {
    c.coefficients.push_back(0.0);
    lp.constraints.push_back(std::move(c));
  }
  LinearConstraint sum;
  sum.coefficients.assign(dim + 1, 1.0);
  sum.coefficients[dim] = 0.0;
  sum.sense = Sense::kEqual;
  sum.rhs = 1.0;
  lp.constraints.push_back(std::move(sum));

  LpSolution sol;
  try {
    sol = SolveLinearProgram(lp, PivotCap(dim + 1, lp.constraints.size()));
  } catch (const ConvergenceError&) {
    return std::nullopt;
  }
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  sol.primal.resize(dim);
  return CleanStrategy(sol.primal);
}

}  // namespace

std::optional<SimplexVector> MaximinRowOnOptimalFace(const PayoffMatrix& a,
                                                     double value, double slack) {
  std::vector<LinearConstraint> face;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    LinearConstraint c;
    c.coefficients.resize(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) c.coefficients[i] = a(i, j);
    c.sense = Sense::kLessEqual;
    c.rhs = value + slack;
    face.push_back(std::move(c));
  }
  return MaximinOnFace(a.rows(), std::move(face));
}

std::optional<SimplexVector> MaximinColOnOptimalFace(const PayoffMatrix& a,
                                                     double value, double slack) {
  std::vector<LinearConstraint> face;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    LinearConstraint c;
    c.coefficients.resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) c.coefficients[j] = a(i, j);
    c.sense = Sense::kGreaterEqual;
    c.rhs = value - slack;
    face.push_back(std::move(c));
  }
  return MaximinOnFace(a.cols(), std::move(face));
}

double DualityGap(const PayoffMatrix& a, const SimplexVector& x,
                  const SimplexVector& y) {
  return std::abs(MaxOf(a.ColumnPayoffs(x.values())) -
                  MinOf(a.RowLosses(y.values())));
}

bool VerifyEquilibrium(const PayoffMatrix& a, const Equilibrium& eq, double tol) {
  if (eq.row_strategy.size() != a.rows() || eq.col_strategy.size() != a.cols()) {
    return false;
  }
  return MaxOf(a.ColumnPayoffs(eq.row_strategy.values())) <= eq.value + tol &&
         MinOf(a.RowLosses(eq.col_strategy.values())) >= eq.value - tol;
}

SolverReport SolveMinimax(const PayoffMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();

  // Shift to B = A + 1 so the game value is positive, then solve the row
  // player's program  max 1^T u  s.t.  B^T u <= 1, u >= 0.  With S = 1^T u at
  // the optimum, x* = u / S and v = 1/S - 1; the column duals give y*.
  LinearProgram lp;
  lp.objective.assign(n, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    LinearConstraint c;
    c.coefficients.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.coefficients[i] = a(i, j) + 1.0;
    c.sense = Sense::kLessEqual;
    c.rhs = 1.0;
    lp.constraints.push_back(std::move(c));
  }
  const LpSolution sol = SolveLinearProgram(lp, PivotCap(n, m));
  if (sol.status != LpStatus::kOptimal || !(sol.objective > 0.0)) {
    throw ConvergenceError("SolveMinimax: primary program did not reach optimum");
  }

  SolverReport report;
  report.iterations = sol.pivots;
  report.method = SolverMethod::kSimplexLp;

  Equilibrium& eq = report.equilibrium;
  eq.row_strategy = CleanStrategy(sol.primal);
  eq.col_strategy = CleanStrategy(sol.duals);
  eq.value = std::clamp(1.0 / sol.objective - 1.0, 0.0, 1.0);

  // Equilibrium selection: prefer the most interior strategy on each optimal
  // face so fully-mixed equilibria are reported whenever they exist. A
  // candidate only replaces the vertex solution when it widens the support;
  // the face slack costs accuracy.
  if (auto x = MaximinRowOnOptimalFace(a, eq.value, kFaceSlack);
      x && SupportSize(*x) > SupportSize(eq.row_strategy)) {
    Equilibrium candidate = eq;
    candidate.row_strategy = *x;
    if (VerifyEquilibrium(a, candidate, kEquilibriumTolerance * 1e-2)) eq = candidate;
  }
  if (auto y = MaximinColOnOptimalFace(a, eq.value, kFaceSlack);
      y && SupportSize(*y) > SupportSize(eq.col_strategy)) {
    Equilibrium candidate = eq;
    candidate.col_strategy = *y;
    if (VerifyEquilibrium(a, candidate, kEquilibriumTolerance * 1e-2)) eq = candidate;
  }

  eq.row_fully_mixed = IsFullyMixed(eq.row_strategy);
  eq.col_fully_mixed = IsFullyMixed(eq.col_strategy);
  report.duality_gap = DualityGap(a, eq.row_strategy, eq.col_strategy);
  return report;
}

FullyMixedReport DetectFullyMixed(const PayoffMatrix& a, const Equilibrium& eq,
                                  double tol) {
  FullyMixedReport report;
  report.row_fully_mixed = IsFullyMixed(eq.row_strategy, tol);
  report.col_fully_mixed = IsFullyMixed(eq.col_strategy, tol);
  if (report.row_fully_mixed) {
    report.interior_row_equilibrium_exists = true;
  } else if (auto x = MaximinRowOnOptimalFace(a, eq.value, kFaceSlack)) {
    report.interior_row_equilibrium_exists = IsFullyMixed(*x, tol);
  }
  const std::vector<double> losses = a.RowLosses(eq.col_strategy.values());
  report.col_equalizes =
      std::all_of(losses.begin(), losses.end(), [&](double l) {
        return std::abs(l - eq.value) <= std::max(tol, kEquilibriumTolerance);
      });
  return report;
}

Equilibrium BruteForceMinimax2x2(const PayoffMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw DimensionError("BruteForceMinimax2x2: matrix must be 2x2");
  }
  Equilibrium eq;
  // Pure saddle point: A(i, j) is the largest entry of row i and the smallest
  // of column j.
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const bool col_best = a(i, j) >= a(i, 1 - j);
      const bool row_best = a(i, j) <= a(1 - i, j);
      if (col_best && row_best) {
        eq.row_strategy = SimplexVector::Vertex(2, i);
        eq.col_strategy = SimplexVector::Vertex(2, j);
        eq.value = a(i, j);
        eq.row_fully_mixed = false;
        eq.col_fully_mixed = false;
        return eq;
      }
    }
  }
  const double a11 = a(0, 0), a12 = a(0, 1), a21 = a(1, 0), a22 = a(1, 1);
  const double denom = a11 - a12 - a21 + a22;
  const double p = (a22 - a21) / denom;
  const double q = (a22 - a12) / denom;
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    // Unreachable without a saddle point; keep a dominance answer anyway.
    const std::size_t i = std::max(a11, a12) <= std::max(a21, a22) ? 0 : 1;
    const std::size_t j = std::min(a11, a21) >= std::min(a12, a22) ? 0 : 1;
    eq.row_strategy = SimplexVector::Vertex(2, i);
    eq.col_strategy = SimplexVector::Vertex(2, j);
    eq.value = a(i, j);
    return eq;
  }
  eq.row_strategy = SimplexVector::FromWeights({p, 1.0 - p});
  eq.col_strategy = SimplexVector::FromWeights({q, 1.0 - q});
  eq.value = (a11 * a22 - a12 * a21) / denom;
  eq.row_fully_mixed = IsFullyMixed(eq.row_strategy);
  eq.col_fully_mixed = IsFullyMixed(eq.col_strategy);
  return eq;
}

}  // namespace lastround
