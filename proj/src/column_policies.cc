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

#include "lastround/column_policies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lastround {

namespace {

constexpr double kClampSlack = 1e-12;

void CheckFeedback(const ColumnPolicyState& state, std::span<const double> feedback) {
  if (feedback.size() != state.cols) {
    throw DimensionError("column policy: feedback must have one entry per column");
  }
}

ColumnDecision Exploit(const ColumnPolicyState& state,
                       std::span<const double> feedback, StepMode mode) {
  const std::int64_t t = state.round + 1;
  const std::size_t e = ArgMax(feedback);
  const double f = feedback[e];
  const double raw = ExploitStep(mode, f, state.equilibrium.value, state.rows, t,
                                 state.row_step_hint);
  ColumnDecision d;
  const double alpha = std::clamp(raw, 0.0, 1.0);
  d.alpha_clamped = raw < -kClampSlack || raw > 1.0 + kClampSlack;
  d.alpha = alpha;
  std::vector<double> y(state.equilibrium.col_strategy.vector());
  for (double& p : y) p *= 1.0 - alpha;
  y[e] += alpha;
  d.strategy = SimplexVector::FromWeights(std::move(y));
  return d;
}

ColumnDecision Stabilize(const ColumnPolicyState& state) {
  return ColumnDecision{state.equilibrium.col_strategy, std::nullopt, false};
}

}  // namespace

std::string ToString(ColumnPolicyKind kind) {
  switch (kind) {
    case ColumnPolicyKind::kLrca: return "lrca";
    case ColumnPolicyKind::kLrca2: return "lrca2";
    case ColumnPolicyKind::kLrcaAdaHedge: return "lrca-adahedge";
    case ColumnPolicyKind::kFixedMinimax: return "fixed-minimax";
    case ColumnPolicyKind::kBestResponseLast: return "best-response-last";
    case ColumnPolicyKind::kMwuColumn: return "mwu-column";
  }
  return "unknown";
}

ColumnPolicyKind ParseColumnPolicy(const std::string& name) {
  if (name == "lrca") return ColumnPolicyKind::kLrca;
  if (name == "lrca2") return ColumnPolicyKind::kLrca2;
  if (name == "lrca-adahedge") return ColumnPolicyKind::kLrcaAdaHedge;
  if (name == "fixed-minimax") return ColumnPolicyKind::kFixedMinimax;
  if (name == "best-response-last") return ColumnPolicyKind::kBestResponseLast;
  if (name == "mwu-column") return ColumnPolicyKind::kMwuColumn;
  throw std::invalid_argument("unknown column policy: " + name);
}

std::string ToString(StepMode mode) {
  switch (mode) {
    case StepMode::kRobust: return "robust";
    case StepMode::kOptimalMwu: return "optimal-mwu";
    case StepMode::kLogDamped: return "log-damped";
    case StepMode::kRelativeGap: return "relative-gap";
  }
  return "unknown";
}

StepMode ParseStepMode(const std::string& name) {
  if (name == "robust") return StepMode::kRobust;
  if (name == "optimal-mwu") return StepMode::kOptimalMwu;
  if (name == "log-damped") return StepMode::kLogDamped;
  if (name == "relative-gap") return StepMode::kRelativeGap;
  throw std::invalid_argument("unknown step mode: " + name);
}

double ExploitStep(StepMode mode, double f, double value, std::size_t rows,
                   std::int64_t t, const StepSizeSchedule& row_step_hint) {
  const double gap = f - value;
  if (gap == 0.0) return 0.0;
  switch (mode) {
    case StepMode::kRobust:
      return gap / std::max(static_cast<double>(rows) / 4.0, 2.0);
    case StepMode::kOptimalMwu:
      return gap / (row_step_hint.At(t, rows) * f);
    case StepMode::kLogDamped:
      // ln(1) = 0; round 1 never exploits, and t = 2 uses ln 2.
      return gap / (std::log(static_cast<double>(std::max<std::int64_t>(t, 2))) * f);
    case StepMode::kRelativeGap:
      return gap / f;
  }
  return 0.0;
}

double SwitchThreshold(std::size_t rows, std::int64_t t) {
  const auto n = static_cast<double>(rows);
  return std::sqrt(n * std::log(n)) * std::pow(static_cast<double>(t), 0.75);
}

double RegretSoFar(const ColumnPolicyState& state) {
  if (state.column_payoff_sums.empty()) return 0.0;
  return *std::max_element(state.column_payoff_sums.begin(),
                           state.column_payoff_sums.end()) -
         state.realized_payoff;
}

ColumnPolicyState MakeColumnPolicy(const ColumnConfig& config,
                                   const Equilibrium& equilibrium,
                                   std::size_t rows, std::size_t cols) {
  if (equilibrium.col_strategy.size() != cols ||
      equilibrium.row_strategy.size() != rows) {
    throw DimensionError("MakeColumnPolicy: equilibrium does not match game shape");
  }
  ColumnPolicyState s;
  s.policy = config.policy;
  s.step_mode = config.step_mode.value_or(
      config.policy == ColumnPolicyKind::kLrca2 ? StepMode::kRelativeGap
                                                : StepMode::kRobust);
  s.row_step_hint = config.row_step_hint;
  s.column_mu = config.column_mu;
  s.equilibrium = equilibrium;
  s.rows = rows;
  s.cols = cols;
  s.column_payoff_sums.assign(cols, 0.0);
  if (config.policy == ColumnPolicyKind::kMwuColumn) {
    const SimplexVector start =
        config.initial_strategy.value_or(SimplexVector::Uniform(cols));
    if (start.size() != cols) {
      throw DimensionError("MakeColumnPolicy: initial strategy has wrong size");
    }
    s.mwu_log_weights.resize(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      s.mwu_log_weights[j] = start[j] > 0.0
                                 ? std::log(start[j])
                                 : -std::numeric_limits<double>::infinity();
    }
  }
  return s;
}

ColumnDecision LrcaStep(const ColumnPolicyState& state,
                        std::span<const double> feedback) {
  CheckFeedback(state, feedback);
  const std::int64_t t = state.round + 1;
  if (t % 2 == 1) return Stabilize(state);
  return Exploit(state, feedback, state.step_mode);
}

ColumnDecision Lrca2Step(const ColumnPolicyState& state,
                         std::span<const double> feedback) {
  CheckFeedback(state, feedback);
  const std::int64_t t = state.round + 1;
  // Exploit on t = 3k + 1 (k >= 1); stabilize on t = 3k - 1 and t = 3k.
  if (t >= 4 && t % 3 == 1) return Exploit(state, feedback, state.step_mode);
  return Stabilize(state);
}

ColumnDecision BaselineStep(const ColumnPolicyState& state,
                            std::span<const double> feedback) {
  CheckFeedback(state, feedback);
  switch (state.policy) {
    case ColumnPolicyKind::kBestResponseLast:
      return ColumnDecision{SimplexVector::Vertex(state.cols, ArgMax(feedback)),
                            std::nullopt, false};
    case ColumnPolicyKind::kMwuColumn:
      return ColumnDecision{SimplexVector::FromLogWeights(state.mwu_log_weights),
                            std::nullopt, false};
    default:
      return Stabilize(state);
  }
}

ColumnStepResult ColumnStep(const ColumnPolicyState& state,
                            std::span<const double> feedback) {
  CheckFeedback(state, feedback);
  ColumnStepResult out{state, {}};
  ColumnPolicyState& s = out.state;
  const std::int64_t t = state.round + 1;

  // Feedback from round t - 1, played against our y_{t-1}.
  const bool completed_round = state.last_strategy.has_value();
  if (completed_round) {
    for (std::size_t j = 0; j < s.cols; ++j) s.column_payoff_sums[j] += feedback[j];
    s.realized_payoff += std::inner_product(
        feedback.begin(), feedback.end(), state.last_strategy->values().begin(), 0.0);
  }

  switch (state.policy) {
    case ColumnPolicyKind::kLrca:
      out.decision = LrcaStep(s, feedback);
      break;
    case ColumnPolicyKind::kLrca2:
      out.decision = Lrca2Step(s, feedback);
      break;
    case ColumnPolicyKind::kLrcaAdaHedge: {
      if (!s.switched && RegretSoFar(s) > SwitchThreshold(s.rows, t)) {
        s.switched = true;
        s.switch_round = t;
        LearnerConfig hedge;
        hedge.algorithm = LearnerAlgorithm::kAdaHedge;
        s.adahedge = MakeLearner(hedge, s.cols);
      } else if (s.switched && completed_round) {
        // AdaHedge minimizes loss; the column player maximizes payoff.
        std::vector<double> loss(s.cols);
        for (std::size_t j = 0; j < s.cols; ++j) loss[j] = 1.0 - feedback[j];
        s.adahedge = Update(*s.adahedge, loss);
      }
      out.decision = s.switched
                         ? ColumnDecision{s.adahedge->strategy, std::nullopt, false}
                         : LrcaStep(s, feedback);
      break;
    }
    case ColumnPolicyKind::kMwuColumn:
      if (completed_round) {
        for (std::size_t j = 0; j < s.cols; ++j) {
          s.mwu_log_weights[j] += s.column_mu * feedback[j];
        }
        const double top =
            *std::max_element(s.mwu_log_weights.begin(), s.mwu_log_weights.end());
        for (double& w : s.mwu_log_weights) w -= top;
      }
      out.decision = BaselineStep(s, feedback);
      break;
    case ColumnPolicyKind::kFixedMinimax:
    case ColumnPolicyKind::kBestResponseLast:
      out.decision = BaselineStep(s, feedback);
      break;
  }

  if (out.decision.alpha_clamped) ++s.alpha_clamps;
  s.last_strategy = out.decision.strategy;
  s.round = t;
  return out;
}

}  // namespace lastround
