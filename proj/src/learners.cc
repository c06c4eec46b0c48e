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

#include "lastround/learners.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace lastround {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckLossSize(std::span<const double> loss, std::size_t n) {
  if (loss.size() != n) throw DimensionError("learner: loss has wrong dimension");
}

std::vector<double> LogOf(const SimplexVector& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] > 0.0 ? std::log(x[i]) : kNegInf;
  }
  return out;
}

void ShiftToZeroMax(std::vector<double>& log_weights) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  for (double& w : log_weights) w -= top;
}

void CenterInPlace(std::vector<double>& v) {
  const double mean =
      std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

// AdaHedge mixture over cumulative losses `l` at learning rate `eta`
// (infinite eta means follow-the-leader). Returns the weights and the mix
// loss M(L) = min L - ln(mean_i exp(-eta (L_i - min L))) / eta.
struct Mixture {
  std::vector<double> weights;
  double mix_loss = 0.0;
};

Mixture Mix(double eta, const std::vector<double>& l) {
  const double mn = *std::min_element(l.begin(), l.end());
  Mixture out;
  out.weights.resize(l.size());
  if (std::isinf(eta)) {
    for (std::size_t i = 0; i < l.size(); ++i) out.weights[i] = l[i] == mn ? 1.0 : 0.0;
  } else {
    for (std::size_t i = 0; i < l.size(); ++i) {
      out.weights[i] = std::exp(-eta * (l[i] - mn));
    }
  }
  const double s = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= s;
  out.mix_loss = std::isinf(eta)
                     ? mn
                     : mn - std::log(s / static_cast<double>(l.size())) / eta;
  return out;
}

double AdaHedgeEta(double mix_gap, std::size_t actions) {
  if (mix_gap == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(actions)) / mix_gap;
}

// Uniform draw in the open interval (0, 1) from the top 53 bits.
double OpenUnit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

SimplexVector RandomSimplexPoint(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& v : w) v = -std::log(OpenUnit(rng));
  return SimplexVector::FromWeights(std::move(w));
}

}  // namespace

StepSizeSchedule StepSizeSchedule::Constant(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw StepSizeError("step size must be finite and nonnegative");
  }
  StepSizeSchedule s;
  s.kind = ScheduleKind::kConstant;
  s.base = mu;
  return s;
}

StepSizeSchedule StepSizeSchedule::InverseSqrt() {
  StepSizeSchedule s;
  s.kind = ScheduleKind::kInverseSqrt;
  s.base = 0.0;
  return s;
}

StepSizeSchedule StepSizeSchedule::Custom(std::vector<double> values) {
  if (values.empty()) throw StepSizeError("custom schedule needs values");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw StepSizeError("step size must be finite and nonnegative");
    }
  }
  StepSizeSchedule s;
  s.kind = ScheduleKind::kCustom;
  s.values = std::move(values);
  return s;
}

double StepSizeSchedule::At(std::int64_t t, std::size_t n) const {
  if (t < 1) throw std::invalid_argument("step size index starts at 1");
  switch (kind) {
    case ScheduleKind::kConstant:
      return base;
    case ScheduleKind::kInverseSqrt:
      return std::sqrt(8.0 * std::log(static_cast<double>(n)) /
                       static_cast<double>(t));
    case ScheduleKind::kCustom: {
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(t),
                                             values.size());
      return values[idx - 1];
    }
  }
  return base;
}

bool StepSizeSchedule::IsNonIncreasing() const {
  if (kind != ScheduleKind::kCustom) return true;
  return std::is_sorted(values.begin(), values.end(), std::greater<>());
}

std::string ToString(LearnerAlgorithm algorithm) {
  switch (algorithm) {
    case LearnerAlgorithm::kMwu: return "mwu";
    case LearnerAlgorithm::kFtrlEuclid: return "ftrl";
    case LearnerAlgorithm::kLmwu: return "lmwu";
    case LearnerAlgorithm::kOmwu: return "omwu";
    case LearnerAlgorithm::kAdaHedge: return "adahedge";
    case LearnerAlgorithm::kRandomMixed: return "random";
  }
  return "unknown";
}

LearnerAlgorithm ParseLearnerAlgorithm(const std::string& name) {
  if (name == "mwu") return LearnerAlgorithm::kMwu;
  if (name == "ftrl" || name == "omd") return LearnerAlgorithm::kFtrlEuclid;
  if (name == "lmwu") return LearnerAlgorithm::kLmwu;
  if (name == "omwu") return LearnerAlgorithm::kOmwu;
  if (name == "adahedge") return LearnerAlgorithm::kAdaHedge;
  if (name == "random") return LearnerAlgorithm::kRandomMixed;
  throw std::invalid_argument("unknown row algorithm: " + name);
}

LearnerState MakeLearner(const LearnerConfig& config, std::size_t actions) {
  if (actions == 0) throw std::invalid_argument("learner needs at least one action");
  LearnerState s;
  s.algorithm = config.algorithm;
  s.schedule = config.schedule;
  s.actions = actions;
  s.strategy = SimplexVector::Uniform(actions);
  const bool multiplicative = config.algorithm == LearnerAlgorithm::kMwu ||
                              config.algorithm == LearnerAlgorithm::kLmwu ||
                              config.algorithm == LearnerAlgorithm::kOmwu;
  if (config.initial_strategy && !multiplicative) {
    throw std::invalid_argument("initial strategy is only supported for mwu, lmwu, omwu");
  }
  switch (config.algorithm) {
    case LearnerAlgorithm::kMwu:
    case LearnerAlgorithm::kLmwu:
    case LearnerAlgorithm::kOmwu:
      s.log_weights.assign(actions, 0.0);
      if (config.initial_strategy) {
        const SimplexVector& start = *config.initial_strategy;
        if (start.size() != actions || !IsFullyMixed(start)) {
          throw std::invalid_argument("initial strategy must be fully mixed with one entry per action");
        }
        for (std::size_t i = 0; i < actions; ++i) s.log_weights[i] = std::log(start[i]);
        ShiftToZeroMax(s.log_weights);
        s.strategy = start;
      }
      break;
    case LearnerAlgorithm::kFtrlEuclid:
      s.theta.assign(actions, 0.0);
      break;
    case LearnerAlgorithm::kAdaHedge:
      s.cumulative_loss.assign(actions, 0.0);
      break;
    case LearnerAlgorithm::kRandomMixed:
      s.rng.seed(config.seed);
      s.strategy = RandomSimplexPoint(s.rng, actions);
      break;
  }
  return s;
}

double NextStepSize(const LearnerState& state) {
  return state.schedule.At(state.round + 1, state.actions);
}

LearnerState Update(const LearnerState& state, std::span<const double> loss) {
  CheckLossSize(loss, state.actions);
  LearnerState next = state;
  const double mu = NextStepSize(state);
  const std::size_t n = state.actions;

  switch (state.algorithm) {
    case LearnerAlgorithm::kMwu:
      for (std::size_t i = 0; i < n; ++i) next.log_weights[i] -= mu * loss[i];
      ShiftToZeroMax(next.log_weights);
      next.strategy = SimplexVector::FromLogWeights(next.log_weights);
      break;

    case LearnerAlgorithm::kLmwu: {
      const double worst = *std::max_element(loss.begin(), loss.end());
      if (mu * worst >= 1.0) {
        throw StepSizeError("LMWU step rejected: mu_t * max loss >= 1");
      }
      if (mu > 1.0 / 3.0) next.lmwu_large_step = true;
      for (std::size_t i = 0; i < n; ++i) {
        next.log_weights[i] += std::log1p(-mu * loss[i]);
      }
      ShiftToZeroMax(next.log_weights);
      next.strategy = SimplexVector::FromLogWeights(next.log_weights);
      break;
    }

    case LearnerAlgorithm::kOmwu: {
      // No observation precedes round 1, so the first step is a plain MWU step.
      const std::span<const double> prev =
          state.last_loss.empty() ? loss : std::span<const double>(state.last_loss);
      for (std::size_t i = 0; i < n; ++i) {
        next.log_weights[i] += -2.0 * mu * loss[i] + mu * prev[i];
      }
      ShiftToZeroMax(next.log_weights);
      next.last_loss.assign(loss.begin(), loss.end());
      next.strategy = SimplexVector::FromLogWeights(next.log_weights);
      break;
    }

    case LearnerAlgorithm::kFtrlEuclid: {
      for (std::size_t i = 0; i < n; ++i) next.theta[i] -= loss[i];
      CenterInPlace(next.theta);
      const std::vector<double> closed = FtrlInteriorClosedForm(next.theta, mu);
      next.interior_closed_form =
          std::all_of(closed.begin(), closed.end(), [](double v) { return v > 0.0; });
      std::vector<double> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = mu * next.theta[i];
      next.strategy = ProjectSimplex(z);
      break;
    }

    case LearnerAlgorithm::kAdaHedge: {
      if (n == 1) {
        next.cumulative_loss[0] += loss[0];
        break;
      }
      const double eta = AdaHedgeEta(state.adahedge_mix_gap, n);
      const Mixture before = Mix(eta, state.cumulative_loss);
      const double hedge_loss = std::inner_product(
          before.weights.begin(), before.weights.end(), loss.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) next.cumulative_loss[i] += loss[i];
      const Mixture after = Mix(eta, next.cumulative_loss);
      next.adahedge_mix_gap +=
          std::max(0.0, hedge_loss - (after.mix_loss - before.mix_loss));
      next.strategy = SimplexVector::FromWeights(
          Mix(AdaHedgeEta(next.adahedge_mix_gap, n), next.cumulative_loss).weights);
      break;
    }

    case LearnerAlgorithm::kRandomMixed:
      next.strategy = RandomSimplexPoint(next.rng, n);
      break;
  }
  ++next.round;
  return next;
}

SimplexVector MwuStep(const SimplexVector& x, std::span<const double> loss,
                      double mu) {
  CheckLossSize(loss, x.size());
  std::vector<double> lw = LogOf(x);
  for (std::size_t i = 0; i < lw.size(); ++i) lw[i] -= mu * loss[i];
  return SimplexVector::FromLogWeights(lw);
}

SimplexVector MwuStepDirect(const SimplexVector& x, std::span<const double> loss,
                            double mu) {
  CheckLossSize(loss, x.size());
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = x[i] * std::exp(-mu * loss[i]);
  return SimplexVector::FromWeights(std::move(w));
}

SimplexVector LmwuStep(const SimplexVector& x, std::span<const double> loss,
                       double mu) {
  CheckLossSize(loss, x.size());
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (mu * loss[i] >= 1.0) {
      throw StepSizeError("LMWU step rejected: mu_t * max loss >= 1");
    }
    w[i] = x[i] * (1.0 - mu * loss[i]);
  }
  return SimplexVector::FromWeights(std::move(w));
}

SimplexVector OmwuStep(const SimplexVector& x, std::span<const double> loss,
                       std::span<const double> prev_loss, double mu) {
  CheckLossSize(loss, x.size());
  CheckLossSize(prev_loss, x.size());
  std::vector<double> lw = LogOf(x);
  for (std::size_t i = 0; i < lw.size(); ++i) {
    lw[i] += -2.0 * mu * loss[i] + mu * prev_loss[i];
  }
  return SimplexVector::FromLogWeights(lw);
}

SimplexVector ProjectSimplex(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("ProjectSimplex: empty vector");
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("ProjectSimplex: non-finite");
  }
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = std::max(z[i] - threshold, 0.0);
  return SimplexVector::FromWeights(std::move(x));
}

SimplexVector FtrlStrategy(std::span<const double> cumulative_loss, double mu) {
  std::vector<double> z(cumulative_loss.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = -mu * cumulative_loss[i];
  return ProjectSimplex(z);
}

std::vector<double> FtrlInteriorClosedForm(std::span<const double> theta,
                                           double mu) {
  const auto n = static_cast<double>(theta.size());
  const double total = std::accumulate(theta.begin(), theta.end(), 0.0);
  std::vector<double> x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    x[i] = (n * mu * theta[i] - mu * total + 1.0) / n;
  }
  return x;
}

}  // namespace lastround
