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

#include "lastround/engine.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "lastround/minimax.h"

namespace lastround {

namespace {

constexpr int kMaxInteriorAttempts = 100000;
// Interior games keep every x* entry at least this far from the boundary.
constexpr double kInteriorMargin = 1e-3;

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PayoffMatrix RandomUniformGame(std::size_t rows, std::size_t cols,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> entries(rows * cols);
  for (double& e : entries) e = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return PayoffMatrix(rows, cols, std::move(entries));
}

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::string ToString(GameKind kind) {
  switch (kind) {
    case GameKind::kRandomUniform: return "random-uniform";
    case GameKind::kRandomInterior: return "random-interior";
    case GameKind::kMatchingPennies: return "matching-pennies";
    case GameKind::kDerived2x2: return "derived-2x2";
    case GameKind::kFromFile: return "from-file";
  }
  return "unknown";
}

GameKind ParseGameKind(const std::string& name) {
  if (name == "random-uniform") return GameKind::kRandomUniform;
  if (name == "random-interior") return GameKind::kRandomInterior;
  if (name == "matching-pennies") return GameKind::kMatchingPennies;
  if (name == "derived-2x2") return GameKind::kDerived2x2;
  if (name == "from-file") return GameKind::kFromFile;
  throw std::invalid_argument("unknown game kind: " + name);
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index) {
  return SplitMix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

PayoffMatrix GenerateGame(const GameSpec& spec) {
  switch (spec.kind) {
    case GameKind::kRandomUniform:
      return RandomUniformGame(spec.rows, spec.cols, spec.seed);
    case GameKind::kRandomInterior:
      for (int attempt = 0; attempt < kMaxInteriorAttempts; ++attempt) {
        PayoffMatrix a = RandomUniformGame(spec.rows, spec.cols,
                                           DeriveSeed(spec.seed, attempt));
        const Equilibrium eq = SolveMinimax(a).equilibrium;
        if (DetectFullyMixed(a, eq).interior_row_equilibrium_exists &&
            IsFullyMixed(eq.row_strategy, kInteriorMargin)) {
          return a;
        }
      }
      throw std::runtime_error("random-interior: no interior game found");
    case GameKind::kMatchingPennies: {
      if (spec.rows != spec.cols) {
        throw DimensionError("matching-pennies needs a square shape");
      }
      std::vector<double> entries(spec.rows * spec.cols, 0.0);
      for (std::size_t i = 0; i < spec.rows; ++i) entries[i * spec.cols + i] = 1.0;
      return PayoffMatrix(spec.rows, spec.cols, std::move(entries));
    }
    case GameKind::kDerived2x2:
      return PayoffMatrix({{0.8, 0.2}, {0.3, 0.6}});
    case GameKind::kFromFile:
      return LoadMatrixCsv(spec.path);
  }
  throw std::invalid_argument("GenerateGame: bad kind");
}

const SimplexVector& Trajectory::row_strategy(std::int64_t t) const {
  if (t == rounds + 1) return final_row_strategy;
  return at(t).x;
}

bool Trajectory::row_interior(std::int64_t t) const {
  if (t == rounds + 1) return final_row_interior;
  return at(t).row_interior;
}

Trajectory Run(const PayoffMatrix& game, const LearnerConfig& row,
               const ColumnConfig& column, std::int64_t rounds, std::uint64_t seed,
               const std::optional<Equilibrium>& equilibrium) {
  if (rounds < 1) throw std::invalid_argument("Run: need at least one round");
  Trajectory traj;
  traj.game = game;
  traj.equilibrium = equilibrium ? *equilibrium : SolveMinimax(game).equilibrium;
  traj.row = row;
  traj.row.seed = seed;
  traj.column = column;
  traj.rounds = rounds;
  traj.seed = seed;
  traj.records.reserve(static_cast<std::size_t>(rounds));

  const Equilibrium& eq = traj.equilibrium;
  LearnerState learner = MakeLearner(traj.row, game.rows());
  ColumnPolicyState policy = MakeColumnPolicy(column, eq, game.rows(), game.cols());
  std::vector<double> feedback = game.ColumnPayoffs(learner.strategy.values());

  for (std::int64_t t = 1; t <= rounds; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.x = learner.strategy;
    rec.row_interior = learner.interior_closed_form;

    ColumnStepResult step = ColumnStep(policy, feedback);
    policy = std::move(step.state);
    rec.y = step.decision.strategy;
    rec.alpha = step.decision.alpha;

    std::vector<double> payoffs = game.ColumnPayoffs(rec.x.values());
    const double f = *std::max_element(payoffs.begin(), payoffs.end());
    rec.payoff = std::inner_product(payoffs.begin(), payoffs.end(),
                                    rec.y.values().begin(), 0.0);
    rec.f_gap = f - eq.value;
    rec.instant_regret_term = f - rec.payoff;
    rec.re_to_eq = RelativeEntropy(eq.row_strategy, rec.x);
    rec.dist_sq_to_eq = EuclidDistSq(rec.x, eq.row_strategy);
    rec.row_step = NextStepSize(learner);

    learner = Update(learner, game.RowLosses(rec.y.values()));
    feedback = std::move(payoffs);
    traj.records.push_back(std::move(rec));
  }

  traj.final_row_strategy = learner.strategy;
  traj.final_row_interior = learner.interior_closed_form;
  traj.switched = policy.switched;
  traj.switch_round = policy.switch_round;
  traj.alpha_clamps = policy.alpha_clamps;
  traj.lmwu_large_step = learner.lmwu_large_step;

  for (std::int64_t k = 1; 2 * k <= rounds; ++k) {
    traj.records[static_cast<std::size_t>(2 * k - 1)].lyapunov_residual =
        LyapunovResidual(traj, k);
  }
  return traj;
}

std::optional<std::int64_t> HittingRound(const PayoffMatrix& game,
                                         const LearnerConfig& row,
                                         const ColumnConfig& column,
                                         const Equilibrium& equilibrium,
                                         double threshold, std::int64_t max_rounds) {
  LearnerState learner = MakeLearner(row, game.rows());
  ColumnPolicyState policy =
      MakeColumnPolicy(column, equilibrium, game.rows(), game.cols());
  std::vector<double> feedback = game.ColumnPayoffs(learner.strategy.values());
  for (std::int64_t t = 1; t <= max_rounds; ++t) {
    std::vector<double> payoffs = game.ColumnPayoffs(learner.strategy.values());
    if (*std::max_element(payoffs.begin(), payoffs.end()) - equilibrium.value <=
        threshold) {
      return t;
    }
    ColumnStepResult step = ColumnStep(policy, feedback);
    policy = std::move(step.state);
    learner = Update(learner, game.RowLosses(step.decision.strategy.values()));
    feedback = std::move(payoffs);
  }
  return std::nullopt;
}

std::vector<Trajectory> RunBatch(const std::vector<RunSpec>& specs,
                                 unsigned threads) {
  std::vector<Trajectory> out(specs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(specs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        const RunSpec& s = specs[i];
        out[i] = Run(s.game, s.row, s.column, s.rounds, s.seed, s.equilibrium);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double InstantRegret(const Trajectory& traj, std::int64_t upto) {
  if (upto < 0 || upto > traj.rounds) throw std::out_of_range("InstantRegret");
  return upto == 0 ? 0.0 : InstantRegretPrefix(traj)[upto - 1];
}

double CumulativeRegret(const Trajectory& traj, std::int64_t upto) {
  if (upto < 0 || upto > traj.rounds) throw std::out_of_range("CumulativeRegret");
  return upto == 0 ? 0.0 : CumulativeRegretPrefix(traj)[upto - 1];
}

std::vector<double> InstantRegretPrefix(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.records.size());
  CompensatedSum sum;
  for (const RoundRecord& r : traj.records) {
    sum.Add(r.instant_regret_term);
    out.push_back(sum.value());
  }
  return out;
}

std::vector<double> CumulativeRegretPrefix(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.records.size());
  std::vector<CompensatedSum> sums(traj.game.cols());
  CompensatedSum realized;
  for (const RoundRecord& r : traj.records) {
    const std::vector<double> p = traj.game.ColumnPayoffs(r.x.values());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sums.size(); ++j) {
      sums[j].Add(p[j]);
      best = std::max(best, sums[j].value());
    }
    realized.Add(r.payoff);
    out.push_back(best - realized.value());
  }
  return out;
}

namespace {

// The exploiting round 2k and its neighbours exist, the column player ran
// LRCA, and alpha_{2k} was recorded.
bool LrcaWindow(const Trajectory& traj, std::int64_t k) {
  if (k < 1 || 2 * k > traj.rounds) return false;
  if (traj.column.policy != ColumnPolicyKind::kLrca) return false;
  return traj.at(2 * k).alpha.has_value();
}

StepMode ColumnStepMode(const Trajectory& traj) {
  return traj.column.step_mode.value_or(StepMode::kRobust);
}

struct ReWindow {
  double decrease;   // RE(x*||x_{2k-1}) - RE(x*||x_{2k+1})
  double gap;        // f(x_{2k-1}) - v
  double mu;         // mu_{2k}
  double alpha;      // alpha_{2k}
};

ReWindow RelativeEntropyWindow(const Trajectory& traj, std::int64_t k) {
  const SimplexVector& xs = traj.equilibrium.row_strategy;
  ReWindow w;
  w.decrease = RelativeEntropy(xs, traj.row_strategy(2 * k - 1)) -
               RelativeEntropy(xs, traj.row_strategy(2 * k + 1));
  w.gap = traj.at(2 * k - 1).f_gap;
  w.mu = traj.at(2 * k).row_step;
  w.alpha = *traj.at(2 * k).alpha;
  return w;
}

}  // namespace

std::optional<double> LyapunovResidualMwu(const Trajectory& traj, std::int64_t k) {
  if (!LrcaWindow(traj, k)) return std::nullopt;
  if (traj.row.algorithm != LearnerAlgorithm::kMwu) return std::nullopt;
  if (!traj.row.schedule.IsNonIncreasing()) return std::nullopt;
  const ReWindow w = RelativeEntropyWindow(traj, k);
  if (w.mu > 1.0) return std::nullopt;
  // The decrease argument needs mu alpha <= (f - v) / f; the robust step
  // guarantees it, other step modes are checked here.
  const double f = w.gap + traj.equilibrium.value;
  if (f > 0.0 && w.mu * w.alpha > w.gap / f * (1.0 + 1e-12) + 1e-15) {
    return std::nullopt;
  }
  return w.decrease - 0.5 * w.mu * w.alpha * w.gap;
}

std::optional<double> LyapunovResidualLmwu(const Trajectory& traj, std::int64_t k) {
  if (!LrcaWindow(traj, k)) return std::nullopt;
  if (traj.row.algorithm != LearnerAlgorithm::kLmwu) return std::nullopt;
  if (ColumnStepMode(traj) != StepMode::kRobust) return std::nullopt;
  if (!traj.row.schedule.IsNonIncreasing()) return std::nullopt;
  const ReWindow w = RelativeEntropyWindow(traj, k);
  if (w.mu > 1.0 / 3.0) return std::nullopt;
  return w.decrease - 0.5 * w.mu * w.alpha * w.gap;
}

namespace {

std::optional<double> OmdDecrease(const Trajectory& traj, std::int64_t k) {
  if (!LrcaWindow(traj, k)) return std::nullopt;
  if (traj.row.algorithm != LearnerAlgorithm::kFtrlEuclid) return std::nullopt;
  if (ColumnStepMode(traj) != StepMode::kRobust) return std::nullopt;
  if (traj.row.schedule.kind != ScheduleKind::kConstant ||
      traj.row.schedule.base > 1.0) {
    return std::nullopt;
  }
  if (!traj.equilibrium.row_fully_mixed) return std::nullopt;
  for (std::int64_t t = 2 * k - 1; t <= 2 * k + 1; ++t) {
    if (!traj.row_interior(t)) return std::nullopt;
  }
  const SimplexVector& xs = traj.equilibrium.row_strategy;
  return EuclidDistSq(traj.row_strategy(2 * k - 1), xs) -
         EuclidDistSq(traj.row_strategy(2 * k + 1), xs);
}

}  // namespace

std::optional<double> LyapunovResidualOmd(const Trajectory& traj, std::int64_t k) {
  const std::optional<double> decrease = OmdDecrease(traj, k);
  if (!decrease) return std::nullopt;
  return *decrease - *traj.at(2 * k).alpha * traj.at(2 * k - 1).f_gap;
}

std::optional<double> LyapunovResidualOmdScaled(const Trajectory& traj,
                                                std::int64_t k) {
  const std::optional<double> decrease = OmdDecrease(traj, k);
  if (!decrease) return std::nullopt;
  return *decrease - traj.row.schedule.base * *traj.at(2 * k).alpha *
                         traj.at(2 * k - 1).f_gap;
}

std::optional<double> LyapunovResidual(const Trajectory& traj, std::int64_t k) {
  switch (traj.row.algorithm) {
    case LearnerAlgorithm::kMwu: return LyapunovResidualMwu(traj, k);
    case LearnerAlgorithm::kFtrlEuclid: return LyapunovResidualOmd(traj, k);
    case LearnerAlgorithm::kLmwu: return LyapunovResidualLmwu(traj, k);
    default: return std::nullopt;
  }
}

std::string ToString(RateMetric metric) {
  switch (metric) {
    case RateMetric::kInstantRegret: return "IR_T";
    case RateMetric::kFGap: return "f_gap";
    case RateMetric::kRelativeEntropy: return "re_to_eq";
  }
  return "unknown";
}

std::vector<std::int64_t> DyadicCheckpoints(int lo_exponent, int hi_exponent) {
  std::vector<std::int64_t> out;
  for (int e = lo_exponent; e <= hi_exponent; ++e) out.push_back(std::int64_t{1} << e);
  return out;
}

RateFit FitRate(std::span<const std::int64_t> checkpoints,
                std::span<const double> values, RateMetric metric) {
  if (checkpoints.size() != values.size()) {
    throw DimensionError("FitRate: checkpoints and values differ in length");
  }
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) {
      throw std::invalid_argument("FitRate: checkpoints must increase strictly");
    }
  }
  RateFit fit;
  fit.metric = metric;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (values[i] > 0.0 && std::isfinite(values[i]) && checkpoints[i] > 0) {
      fit.checkpoints.push_back(checkpoints[i]);
      lx.push_back(std::log(static_cast<double>(checkpoints[i])));
      ly.push_back(std::log(values[i]));
    } else {
      fit.excluded.push_back(checkpoints[i]);
    }
  }
  if (lx.size() < 5) {
    throw std::invalid_argument("FitRate: fewer than five positive checkpoints");
  }
  const auto n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

RateFit FitRate(const Trajectory& traj, RateMetric metric,
                std::span<const std::int64_t> checkpoints) {
  std::vector<double> values;
  const std::vector<double> ir =
      metric == RateMetric::kInstantRegret ? InstantRegretPrefix(traj)
                                           : std::vector<double>{};
  for (std::int64_t t : checkpoints) {
    if (t < 1 || t > traj.rounds) throw std::out_of_range("FitRate: checkpoint");
    switch (metric) {
      case RateMetric::kInstantRegret: values.push_back(ir[t - 1]); break;
      case RateMetric::kFGap: values.push_back(traj.at(t).f_gap); break;
      case RateMetric::kRelativeEntropy: values.push_back(traj.at(t).re_to_eq); break;
    }
  }
  return FitRate(checkpoints, values, metric);
}

}  // namespace lastround
