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

// Test oracles written independently of the library code they check.

#ifndef LASTROUND_TESTS_ORACLES_H_
#define LASTROUND_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "lastround/game.h"

namespace lastround::oracles {

inline PayoffMatrix RandomGame(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(n * m);
  for (double& v : e) v = u(rng);
  return PayoffMatrix(n, m, e);
}

// 2x2 game solved from the indifference equations.
struct Solution2x2 {
  double value;
  bool mixed;
  double p;  // row weight on row 0 when mixed
  double q;  // column weight on column 0 when mixed
};

inline Solution2x2 Solve2x2ByHand(const PayoffMatrix& a) {
  const double A = a(0, 0), B = a(0, 1), C = a(1, 0), D = a(1, 1);
  // Row minimizes. Pure saddle: an entry that is the max of its row and the
  // min of its column.
  double best = 2.0;
  bool saddle = false;
  const double m[2][2] = {{A, B}, {C, D}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const bool row_max = m[i][j] >= m[i][1 - j];
      const bool col_min = m[i][j] <= m[1 - i][j];
      if (row_max && col_min) {
        saddle = true;
        best = std::min(best, m[i][j]);
      }
    }
  }
  if (saddle) return {best, false, 0.0, 0.0};
  const double den = A - B - C + D;
  return {(A * D - B * C) / den, true, (D - C) / den, (D - B) / den};
}

// Largest violation of the projection optimality conditions
//   x >= 0, sum x = 1, x_i = max(z_i - tau, 0) for one tau.
inline double ProjectionKktViolation(const std::vector<double>& z,
                                     std::span<const double> x) {
  double tau = NAN;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (x[i] > 0.0) {
      tau = z[i] - x[i];
      break;
    }
  }
  if (std::isnan(tau)) return INFINITY;
  double sum = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += x[i];
    worst = std::max(worst, -x[i]);
    if (x[i] > 0.0) {
      worst = std::max(worst, std::abs(z[i] - x[i] - tau));
    } else {
      worst = std::max(worst, z[i] - tau);
    }
  }
  return std::max(worst, std::abs(sum - 1.0));
}

}  // namespace lastround::oracles

#endif  // LASTROUND_TESTS_ORACLES_H_
