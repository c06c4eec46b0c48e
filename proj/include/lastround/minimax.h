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

#ifndef LASTROUND_MINIMAX_H_
#define LASTROUND_MINIMAX_H_

#include <optional>

#include "lastround/game.h"

namespace lastround {

enum class SolverMethod { kSimplexLp, kVertexEnumerationOracle };

struct SolverReport {
  Equilibrium equilibrium;
  // |max_j (x*^T A)_j - min_i (A y*)_i|
  double duality_gap = 0.0;
  int iterations = 0;
  SolverMethod method = SolverMethod::kSimplexLp;
};

inline constexpr double kEquilibriumTolerance = 1e-7;

// Minimax equilibrium of `a` by linear programming. Among optimal strategies
// the one maximizing its smallest component is returned for each player, so
// a fully-mixed equilibrium is found whenever one exists. Throws
// ConvergenceError past 10 * (n + m)^2 pivots.
SolverReport SolveMinimax(const PayoffMatrix& a);

// max_j (x*^T A)_j <= v + tol and min_i (A y*)_i >= v - tol.
bool VerifyEquilibrium(const PayoffMatrix& a, const Equilibrium& eq, double tol);

double DualityGap(const PayoffMatrix& a, const SimplexVector& x,
                  const SimplexVector& y);

struct FullyMixedReport {
  bool row_fully_mixed = false;
  bool col_fully_mixed = false;
  bool interior_row_equilibrium_exists = false;
  // A y* = v 1 within tol. Implied by interior_row_equilibrium_exists for any
  // optimal y*; this is the hook the stability checks key on.
  bool col_equalizes = false;
};

FullyMixedReport DetectFullyMixed(const PayoffMatrix& a, const Equilibrium& eq,
                                  double tol = kFullyMixedTolerance);

// Row strategy maximizing min_i x(i) over {x : max_j (x^T A)_j <= value +
// slack}. Empty when that face is empty.
std::optional<SimplexVector> MaximinRowOnOptimalFace(const PayoffMatrix& a,
                                                     double value, double slack);
std::optional<SimplexVector> MaximinColOnOptimalFace(const PayoffMatrix& a,
                                                     double value, double slack);

// Closed-form 2x2 solution: a pure saddle point if one exists, otherwise the
// indifference equations. Independent of the LP path.
Equilibrium BruteForceMinimax2x2(const PayoffMatrix& a);

}  // namespace lastround

#endif  // LASTROUND_MINIMAX_H_
