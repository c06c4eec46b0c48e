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

#ifndef LASTROUND_ENGINE_H_
#define LASTROUND_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lastround/column_policies.h"
#include "lastround/game.h"
#include "lastround/learners.h"

namespace lastround {

// ---------------------------------------------------------------------------
// Game generation.

enum class GameKind {
  kRandomUniform,
  // Random-uniform games rejection-sampled until the row player has a
  // fully-mixed equilibrium strategy.
  kRandomInterior,
  kMatchingPennies,
  kDerived2x2,
  kFromFile,
};

std::string ToString(GameKind kind);
GameKind ParseGameKind(const std::string& name);

struct GameSpec {
  GameKind kind = GameKind::kRandomUniform;
  std::size_t rows = 2;
  std::size_t cols = 2;
  std::uint64_t seed = 0;
  std::string path;
};

PayoffMatrix GenerateGame(const GameSpec& spec);

// Per-game seed splitting: splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

// ---------------------------------------------------------------------------
// Repeated play.

struct RoundRecord {
  std::int64_t t = 0;
  SimplexVector x;
  SimplexVector y;
  double payoff = 0.0;               // x_t^T A y_t
  double f_gap = 0.0;                // f(x_t) - v
  double re_to_eq = 0.0;             // RE(x* || x_t)
  double dist_sq_to_eq = 0.0;        // |x_t - x*|^2
  double instant_regret_term = 0.0;  // max_j (x_t^T A)_j - x_t^T A y_t
  std::optional<double> alpha;
  std::optional<double> lyapunov_residual;
  // Row step size applied to this round's loss.
  double row_step = 0.0;
  // FTRL only: x_t equals the unprojected closed form (fully mixed).
  bool row_interior = true;
};

struct Trajectory {
  PayoffMatrix game;
  Equilibrium equilibrium;
  LearnerConfig row;
  ColumnConfig column;
  std::int64_t rounds = 0;
  std::uint64_t seed = 0;
  // Indexed by t - 1.
  std::vector<RoundRecord> records;
  // x_{T+1}, the row strategy after the last update.
  SimplexVector final_row_strategy;
  bool final_row_interior = true;

  bool switched = false;
  std::int64_t switch_round = 0;
  int alpha_clamps = 0;
  bool lmwu_large_step = false;

  const RoundRecord& at(std::int64_t t) const { return records.at(t - 1); }
  // x_t for 1 <= t <= T + 1.
  const SimplexVector& row_strategy(std::int64_t t) const;
  bool row_interior(std::int64_t t) const;
};

// Plays `rounds` rounds. The column player's first decision sees x_1^T A.
// Dynamics are deterministic; `seed` only feeds the random-mixed row.
// When `equilibrium` is unset it is computed with SolveMinimax.
Trajectory Run(const PayoffMatrix& game, const LearnerConfig& row,
               const ColumnConfig& column, std::int64_t rounds, std::uint64_t seed,
               const std::optional<Equilibrium>& equilibrium = std::nullopt);

// Plays without recording and returns the first t <= max_rounds with
// f(x_t) - v <= threshold, or nullopt.
std::optional<std::int64_t> HittingRound(const PayoffMatrix& game,
                                         const LearnerConfig& row,
                                         const ColumnConfig& column,
                                         const Equilibrium& equilibrium,
                                         double threshold, std::int64_t max_rounds);

struct RunSpec {
  PayoffMatrix game;
  LearnerConfig row;
  ColumnConfig column;
  std::int64_t rounds = 1;
  std::uint64_t seed = 0;
  std::optional<Equilibrium> equilibrium;
};

// Independent runs across threads; output order matches `specs`.
std::vector<Trajectory> RunBatch(const std::vector<RunSpec>& specs,
                                 unsigned threads = 0);

// ---------------------------------------------------------------------------
// Metrics.

// Sums below use Neumaier compensation; R_T <= IR_T must survive 1e5 terms.
//
// IR_T = sum_{t <= T} (max_j (x_t^T A)_j - x_t^T A y_t), undivided.
double InstantRegret(const Trajectory& traj, std::int64_t upto);
// R_T = max_j sum_{t <= T} (x_t^T A)_j - sum_{t <= T} x_t^T A y_t.
double CumulativeRegret(const Trajectory& traj, std::int64_t upto);
// Both for every prefix; entry t - 1 holds the value at T = t.
std::vector<double> InstantRegretPrefix(const Trajectory& traj);
std::vector<double> CumulativeRegretPrefix(const Trajectory& traj);

// Per-step decrease certificates, one per exploiting round 2k. Each returns
// nullopt when the run does not meet the inequality's preconditions.
//
// MWU vs LRCA: RE(x*||x_{2k-1}) - RE(x*||x_{2k+1})
//              - mu_{2k} alpha_{2k} (f(x_{2k-1}) - v) / 2.
std::optional<double> LyapunovResidualMwu(const Trajectory& traj, std::int64_t k);
// FTRL vs LRCA: |x_{2k-1}-x*|^2 - |x_{2k+1}-x*|^2 - alpha_{2k} (f(x_{2k-1}) - v).
std::optional<double> LyapunovResidualOmd(const Trajectory& traj, std::int64_t k);
// Same left-hand side with mu alpha_{2k} (f - v) on the right, the decrease
// the projection argument actually delivers for mu < 1.
std::optional<double> LyapunovResidualOmdScaled(const Trajectory& traj,
                                                std::int64_t k);
// LMWU vs LRCA: as the MWU residual, with mu_{2k} <= 1/3.
std::optional<double> LyapunovResidualLmwu(const Trajectory& traj, std::int64_t k);

// Residual for the run's own learner (MWU, FTRL or LMWU), or nullopt.
std::optional<double> LyapunovResidual(const Trajectory& traj, std::int64_t k);

// ---------------------------------------------------------------------------
// Rate fits.

enum class RateMetric { kInstantRegret, kFGap, kRelativeEntropy };

std::string ToString(RateMetric metric);

struct RateFit {
  RateMetric metric = RateMetric::kInstantRegret;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::int64_t> checkpoints;
  // Checkpoints dropped because the metric was not positive there.
  std::vector<std::int64_t> excluded;
};

// 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<std::int64_t> DyadicCheckpoints(int lo_exponent, int hi_exponent);

// Least-squares line through (log T, log value). Needs at least five usable
// points.
RateFit FitRate(std::span<const std::int64_t> checkpoints,
                std::span<const double> values, RateMetric metric);

// Reads the metric off one long trajectory at each checkpoint; the dynamics
// do not depend on the horizon, so prefixes stand in for separate runs.
RateFit FitRate(const Trajectory& traj, RateMetric metric,
                std::span<const std::int64_t> checkpoints);

}  // namespace lastround

#endif  // LASTROUND_ENGINE_H_
