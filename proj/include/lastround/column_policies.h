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

#ifndef LASTROUND_COLUMN_POLICIES_H_
#define LASTROUND_COLUMN_POLICIES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lastround/game.h"
#include "lastround/learners.h"

// Policies of the informed column player. A policy knows (y*, v) and sees
// only the previous round's payoff vector x_{t-1}^T A; it never sees x_{t-1}
// or A itself.
//
// LRCA alternates a stabilizing round (play y*) with an exploiting round
//   y_t = (1 - alpha_t) y* + alpha_t e_t,  e_t = argmax_j (x_{t-1}^T A)_j,
// where alpha_t scales with the exploitability gap f(x_{t-1}) - v.

namespace lastround {

enum class ColumnPolicyKind {
  kLrca,
  kLrca2,
  kLrcaAdaHedge,
  kFixedMinimax,
  kBestResponseLast,
  kMwuColumn,
};

// How the exploiting step alpha_t is derived from the gap g = f - v.
enum class StepMode {
  kRobust,       // g / max(n/4, 2)
  kOptimalMwu,   // g / (mu_t f), mu_t from the row step-size hint
  kLogDamped,    // g / (ln(t) f)
  kRelativeGap,  // g / f
};

std::string ToString(ColumnPolicyKind kind);
ColumnPolicyKind ParseColumnPolicy(const std::string& name);
std::string ToString(StepMode mode);
StepMode ParseStepMode(const std::string& name);

struct ColumnConfig {
  ColumnPolicyKind policy = ColumnPolicyKind::kLrca;
  // Defaults: kRelativeGap for kLrca2, kRobust otherwise.
  std::optional<StepMode> step_mode;
  // Row player's step sizes as assumed by kOptimalMwu.
  StepSizeSchedule row_step_hint = StepSizeSchedule::Constant(1.0);
  // kMwuColumn: learning rate and starting point (uniform when unset).
  double column_mu = 0.1;
  std::optional<SimplexVector> initial_strategy;
};

struct ColumnPolicyState {
  ColumnPolicyKind policy = ColumnPolicyKind::kLrca;
  StepMode step_mode = StepMode::kRobust;
  StepSizeSchedule row_step_hint;
  double column_mu = 0.0;
  Equilibrium equilibrium;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Strategies emitted so far; the next decision is for round `round + 1`.
  std::int64_t round = 0;

  // Regret bookkeeping over completed rounds: sum_t x_t^T A and
  // sum_t x_t^T A y_t, both rebuilt from feedback.
  std::vector<double> column_payoff_sums;
  double realized_payoff = 0.0;
  std::optional<SimplexVector> last_strategy;

  // LRCA + AdaHedge. `switched` never resets.
  bool switched = false;
  std::int64_t switch_round = 0;
  std::optional<LearnerState> adahedge;

  std::vector<double> mwu_log_weights;

  // Exploit steps whose raw alpha fell outside [0, 1].
  int alpha_clamps = 0;
};

struct ColumnDecision {
  SimplexVector strategy;
  std::optional<double> alpha;
  bool alpha_clamped = false;
};

struct ColumnStepResult {
  ColumnPolicyState state;
  ColumnDecision decision;
};

ColumnPolicyState MakeColumnPolicy(const ColumnConfig& config,
                                   const Equilibrium& equilibrium,
                                   std::size_t rows, std::size_t cols);

// Full policy step: records the feedback of the last completed round, then
// emits y_t for t = state.round + 1. At t = 1 `feedback` only seeds the
// decision and is not counted as a played round.
ColumnStepResult ColumnStep(const ColumnPolicyState& state,
                            std::span<const double> feedback);

// Decision rules for round t = state.round + 1 without bookkeeping.
ColumnDecision LrcaStep(const ColumnPolicyState& state,
                        std::span<const double> feedback);
ColumnDecision Lrca2Step(const ColumnPolicyState& state,
                         std::span<const double> feedback);
ColumnDecision BaselineStep(const ColumnPolicyState& state,
                            std::span<const double> feedback);

// Raw alpha_t for gap f - v at round t; may fall outside [0, 1].
double ExploitStep(StepMode mode, double f, double value, std::size_t rows,
                   std::int64_t t, const StepSizeSchedule& row_step_hint);

// sqrt(n ln n) t^{3/4}, the regret budget before LRCA hands over to AdaHedge.
double SwitchThreshold(std::size_t rows, std::int64_t t);

// max_j sum_t (x_t^T A)_j - sum_t x_t^T A y_t over completed rounds.
double RegretSoFar(const ColumnPolicyState& state);

}  // namespace lastround

#endif  // LASTROUND_COLUMN_POLICIES_H_
