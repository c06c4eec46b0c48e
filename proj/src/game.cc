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

#include "lastround/game.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>

namespace lastround {

namespace {

void CheckSameSize(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

}  // namespace

SimplexVector::SimplexVector(std::vector<double> probabilities) {
  if (probabilities.empty()) {
    throw std::invalid_argument("SimplexVector: empty vector");
  }
  double sum = 0.0;
  for (double& p : probabilities) {
    if (!std::isfinite(p) || p < -1e-12) {
      throw std::invalid_argument("SimplexVector: negative or non-finite entry");
    }
    p = std::max(p, 0.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("SimplexVector: entries do not sum to one");
  }
  for (double& p : probabilities) p /= sum;
  p_ = std::move(probabilities);
}

SimplexVector SimplexVector::FromWeights(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("FromWeights: negative or non-finite weight");
    }
    sum += w;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("FromWeights: weights must have positive sum");
  }
  for (double& w : weights) w /= sum;
  return SimplexVector(Normalized{}, std::move(weights));
}

SimplexVector SimplexVector::FromLogWeights(std::span<const double> log_weights) {
  if (log_weights.empty()) {
    throw std::invalid_argument("FromLogWeights: empty vector");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) {
    throw std::invalid_argument("FromLogWeights: no finite log weight");
  }
  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(log_weights[i] - top);
  }
  return FromWeights(std::move(w));
}

SimplexVector SimplexVector::Uniform(std::size_t d) {
  if (d == 0) throw std::invalid_argument("Uniform: zero dimension");
  return SimplexVector(Normalized{},
                       std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

SimplexVector SimplexVector::Vertex(std::size_t d, std::size_t index) {
  if (index >= d) throw std::invalid_argument("Vertex: index out of range");
  std::vector<double> p(d, 0.0);
  p[index] = 1.0;
  return SimplexVector(Normalized{}, std::move(p));
}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("PayoffMatrix: need at least one row and column");
  }
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("PayoffMatrix: entry count does not match shape");
  }
  bool any_positive = false;
  for (double e : entries_) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw std::invalid_argument("PayoffMatrix: entries must lie in [0, 1]");
    }
    any_positive |= e > 0.0;
  }
  if (!any_positive) {
    throw std::invalid_argument("PayoffMatrix: matrix must be non-zero");
  }
}

namespace {

std::vector<double> Flatten(const std::vector<std::vector<double>>& rows,
                            std::size_t& cols) {
  cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw DimensionError("PayoffMatrix: ragged rows");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

}  // namespace

PayoffMatrix::PayoffMatrix(const std::vector<std::vector<double>>& rows) {
  std::size_t cols = 0;
  std::vector<double> flat = Flatten(rows, cols);
  *this = PayoffMatrix(rows.size(), cols, std::move(flat));
}

std::vector<double> PayoffMatrix::ColumnPayoffs(std::span<const double> x) const {
  CheckSameSize(x.size(), rows_, "ColumnPayoffs");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = &entries_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) out[j] += xi * row[j];
  }
  return out;
}

std::vector<double> PayoffMatrix::RowLosses(std::span<const double> y) const {
  CheckSameSize(y.size(), cols_, "RowLosses");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = &entries_[i * cols_];
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * y[j];
    out[i] = acc;
  }
  return out;
}

double PayoffMatrix::Payoff(std::span<const double> x,
                            std::span<const double> y) const {
  const std::vector<double> losses = RowLosses(y);
  CheckSameSize(x.size(), rows_, "Payoff");
  return std::inner_product(x.begin(), x.end(), losses.begin(), 0.0);
}

bool IsFullyMixed(const SimplexVector& p, double tol) {
  return std::all_of(p.values().begin(), p.values().end(),
                     [tol](double v) { return v > tol; });
}

std::size_t ArgMax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("ArgMax: empty vector");
  // max_element returns the first maximum.
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

double FValue(const SimplexVector& x, const PayoffMatrix& a) {
  const std::vector<double> payoffs = a.ColumnPayoffs(x.values());
  return *std::max_element(payoffs.begin(), payoffs.end());
}

std::size_t BestResponseColumn(const SimplexVector& x, const PayoffMatrix& a) {
  return ArgMax(a.ColumnPayoffs(x.values()));
}

double RelativeEntropy(const SimplexVector& p, const SimplexVector& q) {
  CheckSameSize(p.size(), q.size(), "RelativeEntropy");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);
}

double EuclidDistSq(const SimplexVector& p, const SimplexVector& q) {
  CheckSameSize(p.size(), q.size(), "EuclidDistSq");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    sum += d * d;
  }
  return sum;
}

PayoffMatrix ParseMatrixCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix csv line " + std::to_string(line_no) +
                                    ": not a number: '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("matrix csv line " + std::to_string(line_no) +
                                    ": trailing characters in '" + cell + "'");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix csv: no rows");
  return PayoffMatrix(rows);
}

PayoffMatrix LoadMatrixCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  return ParseMatrixCsv(in);
}

std::string MatrixToCsv(const PayoffMatrix& a) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lastround
