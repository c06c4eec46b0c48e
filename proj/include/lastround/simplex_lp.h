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

#ifndef LASTROUND_SIMPLEX_LP_H_
#define LASTROUND_SIMPLEX_LP_H_

#include <cstddef>
#include <stdexcept>
#include <vector>

// Small dense linear programs solved with a two-phase tableau simplex.
//
//   maximize    c^T z
//   subject to  a_k^T z (<=, =, >=) b_k   for every constraint k
//               z >= 0
//
// Pivoting follows Bland's rule (lowest-index entering and leaving variable),
// so the method terminates on degenerate problems.

namespace lastround {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coefficients;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  // One shadow price per constraint: d(optimum) / d(rhs_k).
  std::vector<double> duals;
  double objective = 0.0;
  int pivots = 0;
};

// Throws ConvergenceError when more than `max_pivots` pivots are needed.
LpSolution SolveLinearProgram(const LinearProgram& lp, int max_pivots);

}  // namespace lastround

#endif  // LASTROUND_SIMPLEX_LP_H_
