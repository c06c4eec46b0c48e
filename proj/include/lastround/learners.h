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

#ifndef LASTROUND_LEARNERS_H_
#define LASTROUND_LEARNERS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lastround/game.h"

// No-regret learners for the row player. Each learner starts from the uniform
// strategy, observes the loss vector A y_t after every round, and emits its
// next strategy. States are plain values: Update returns a new state.

namespace lastround {

class StepSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ScheduleKind { kConstant, kInverseSqrt, kCustom };

// mu_t for rounds t = 1, 2, ...
struct StepSizeSchedule {
  ScheduleKind kind = ScheduleKind::kConstant;
  double base = 0.1;
  // Explicit mu_1, mu_2, ... for kCustom; the last value repeats.
  std::vector<double> values;

  static StepSizeSchedule Constant(double mu);
  // mu_t = sqrt(8 ln(n) / t).
  static StepSizeSchedule InverseSqrt();
  static StepSizeSchedule Custom(std::vector<double> values);

  // `n` is the number of actions of the learner using the schedule.
  double At(std::int64_t t, std::size_t n) const;
  bool IsNonIncreasing() const;
};

enum class LearnerAlgorithm {
  kMwu,
  kFtrlEuclid,
  kLmwu,
  kOmwu,
  kAdaHedge,
  // Not a learner: plays an independent uniformly random point of the simplex
  // every round. Used as an adversarial row.
  kRandomMixed,
};

std::string ToString(LearnerAlgorithm algorithm);
LearnerAlgorithm ParseLearnerAlgorithm(const std::string& name);

struct LearnerConfig {
  LearnerAlgorithm algorithm = LearnerAlgorithm::kMwu;
  StepSizeSchedule schedule;
  // Only used by kRandomMixed.
  std::uint64_t seed = 0;
  // Fully-mixed starting point for kMwu, kLmwu and kOmwu (uniform when unset).
  std::optional<SimplexVector> initial_strategy;
};

struct LearnerState {
  LearnerAlgorithm algorithm = LearnerAlgorithm::kMwu;
  StepSizeSchedule schedule;
  std::size_t actions = 0;
  // Number of updates applied so far. The next update uses mu_{round + 1}.
  std::int64_t round = 0;

  // MWU / LMWU / OMWU: unnormalized log weights, shifted so the largest is 0.
  std::vector<double> log_weights;
  // FTRL: theta = -sum of observed losses, centered to zero mean. Centering
  // does not change the projection.
  std::vector<double> theta;
  // OMWU: the previous round's loss; empty before the first update.
  std::vector<double> last_loss;
  // AdaHedge: cumulative losses and the accumulated mixability gap Delta.
  std::vector<double> cumulative_loss;
  double adahedge_mix_gap = 0.0;

  // FTRL: whether the current strategy equals the interior closed form
  // (every component strictly positive before projection).
  bool interior_closed_form = true;
  // LMWU: set once an update used mu_t > 1/3.
  bool lmwu_large_step = false;

  std::mt19937_64 rng;
  SimplexVector strategy;
};

LearnerState MakeLearner(const LearnerConfig& config, std::size_t actions);

// Applies one round of loss; `loss` must have one entry per action.
// Throws StepSizeError for an LMWU step with mu_t * max loss >= 1.
LearnerState Update(const LearnerState& state, std::span<const double> loss);

// Step size the next Update will use.
double NextStepSize(const LearnerState& state);

// Single-step update rules on explicit strategies. These are the reference
// forms of the state machine above.

// x'(i) ~ x(i) exp(-mu l(i)), computed in the log domain.
SimplexVector MwuStep(const SimplexVector& x, std::span<const double> loss,
                      double mu);
// Same rule with direct exponentiation, for cross-checking.
SimplexVector MwuStepDirect(const SimplexVector& x, std::span<const double> loss,
                            double mu);
// x'(i) ~ x(i) (1 - mu l(i)).
SimplexVector LmwuStep(const SimplexVector& x, std::span<const double> loss,
                       double mu);
// x'(i) ~ x(i) exp(-2 mu l(i) + mu prev(i)).
SimplexVector OmwuStep(const SimplexVector& x, std::span<const double> loss,
                       std::span<const double> prev_loss, double mu);

// Euclidean projection onto the probability simplex (sort and threshold).
SimplexVector ProjectSimplex(std::span<const double> z);

// FTRL with Euclidean regularizer: projection of mu * theta where theta is
// minus the cumulative loss.
SimplexVector FtrlStrategy(std::span<const double> cumulative_loss, double mu);

// x(i) = (n mu theta(i) - mu sum_j theta(j) + 1) / n, the unprojected
// stationary point. Equals FtrlStrategy whenever all components are positive.
std::vector<double> FtrlInteriorClosedForm(std::span<const double> theta,
                                           double mu);

}  // namespace lastround

#endif  // LASTROUND_LEARNERS_H_
