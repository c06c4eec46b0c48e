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

#ifndef LASTROUND_GAME_H_
#define LASTROUND_GAME_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Domain types and stateless primitives for two-player zero-sum matrix games.
// The row player minimizes x^T A y, the column player maximizes it.

namespace lastround {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability distribution over d pure strategies. Always nonnegative and
// normalized; construction from raw input rejects sums off by more than 1e-6.
class SimplexVector {
 public:
  static constexpr double kSumTolerance = 1e-6;

  SimplexVector() = default;
  // Accepts probabilities whose sum is within kSumTolerance of one and
  // renormalizes them. Throws std::invalid_argument otherwise.
  explicit SimplexVector(std::vector<double> probabilities);

  // Normalizes arbitrary nonnegative weights with a positive finite sum.
  static SimplexVector FromWeights(std::vector<double> weights);
  // Normalizes exp(log_weights) without leaving the log domain until the end.
  static SimplexVector FromLogWeights(std::span<const double> log_weights);
  static SimplexVector Uniform(std::size_t d);
  static SimplexVector Vertex(std::size_t d, std::size_t index);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  const std::vector<double>& vector() const { return p_; }

  bool operator==(const SimplexVector&) const = default;

 private:
  struct Normalized {};
  SimplexVector(Normalized, std::vector<double> p) : p_(std::move(p)) {}

  std::vector<double> p_;
};

// The game matrix A: n rows, m columns, entries in [0, 1], not all zero.
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  explicit PayoffMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> entries() const { return entries_; }

  // x^T A, the column player's payoff for each pure column.
  std::vector<double> ColumnPayoffs(std::span<const double> x) const;
  // A y, the row player's loss for each pure row.
  std::vector<double> RowLosses(std::span<const double> y) const;
  // x^T A y.
  double Payoff(std::span<const double> x, std::span<const double> y) const;

  bool operator==(const PayoffMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// A minimax equilibrium (x*, y*, v).
struct Equilibrium {
  SimplexVector row_strategy;
  SimplexVector col_strategy;
  double value = 0.0;
  bool row_fully_mixed = false;
  bool col_fully_mixed = false;
};

inline constexpr double kFullyMixedTolerance = 1e-9;

bool IsFullyMixed(const SimplexVector& p, double tol = kFullyMixedTolerance);

// f(x) = max_y x^T A y = max_j (x^T A)_j.
double FValue(const SimplexVector& x, const PayoffMatrix& a);

// Smallest index j maximizing (x^T A)_j.
std::size_t BestResponseColumn(const SimplexVector& x, const PayoffMatrix& a);

// Lowest-index argmax of a payoff vector.
std::size_t ArgMax(std::span<const double> values);

// Sum_i p(i) ln(p(i) / q(i)) with 0 ln(0/q) = 0. Returns +infinity when some
// p(i) > 0 meets q(i) = 0.
double RelativeEntropy(const SimplexVector& p, const SimplexVector& q);

double EuclidDistSq(const SimplexVector& p, const SimplexVector& q);

// Plain CSV, one matrix row per line. Blank lines are ignored.
PayoffMatrix ParseMatrixCsv(std::istream& in);
PayoffMatrix LoadMatrixCsv(const std::string& path);
std::string MatrixToCsv(const PayoffMatrix& a);

}  // namespace lastround

#endif  // LASTROUND_GAME_H_
