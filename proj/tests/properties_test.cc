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

// Randomized invariants across modules.

#include <cmath>
#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "lastround/engine.h"
#include "lastround/learners.h"
#include "lastround/minimax.h"
#include "oracles.h"

namespace lastround {
namespace {

SimplexVector RandomPoint(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (double& v : w) v = e(rng);
  return SimplexVector::FromWeights(std::move(w));
}

TEST(GamePropertyTest, FBoundsAndEquilibriumValue) {
  std::mt19937_64 rng(101);
  for (int g = 0; g < 50; ++g) {
    const std::size_t n = 2 + rng() % 7, m = 2 + rng() % 7;
    PayoffMatrix a = oracles::RandomGame(rng, n, m);
    Equilibrium eq = SolveMinimax(a).equilibrium;
    EXPECT_NEAR(FValue(eq.row_strategy, a), eq.value, 1e-7);
    for (int k = 0; k < 50; ++k) {
      ASSERT_GE(FValue(RandomPoint(rng, n), a), eq.value - 1e-9);
    }
  }
}

TEST(GamePropertyTest, RelativeEntropyNonNegative) {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 1 + rng() % 8;
    SimplexVector p = RandomPoint(rng, n), q = RandomPoint(rng, n);
    ASSERT_GE(RelativeEntropy(p, q), 0.0);
    ASSERT_EQ(RelativeEntropy(p, p), 0.0);
  }
}

TEST(GamePropertyTest, BestResponseIgnoresConstantShift) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> payoff(2 + rng() % 8);
    for (double& v : payoff) v = std::round(u(rng) * 4) / 4;  // force ties
    std::vector<double> shifted = payoff;
    const double c = std::round(u(rng));
    for (double& v : shifted) v += c;
    ASSERT_EQ(ArgMax(payoff), ArgMax(shifted));
  }
}

TEST(MinimaxPropertyTest, ScaleShiftKeepsStrategiesOptimal) {
  std::mt19937_64 rng(104);
  for (int g = 0; g < 50; ++g) {
    const std::size_t n = 2 + rng() % 7, m = 2 + rng() % 7;
    PayoffMatrix a = oracles::RandomGame(rng, n, m);
    const double c = 0.1 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    std::vector<double> e(a.entries().begin(), a.entries().end());
    for (double& v : e) v = (v + c) / (1 + c);
    PayoffMatrix b(n, m, e);
    Equilibrium eq = SolveMinimax(a).equilibrium;
    Equilibrium moved = eq;
    moved.value = (eq.value + c) / (1 + c);
    EXPECT_TRUE(VerifyEquilibrium(b, moved, 1e-9));
    EXPECT_NEAR(SolveMinimax(b).equilibrium.value, moved.value, 1e-9);
  }
}

TEST(MinimaxPropertyTest, SolverMatchesBruteForceOn2x2) {
  std::mt19937_64 rng(105);
  for (int g = 0; g < 200; ++g) {
    PayoffMatrix a = oracles::RandomGame(rng, 2, 2);
    EXPECT_NEAR(SolveMinimax(a).equilibrium.value, BruteForceMinimax2x2(a).value, 1e-9);
  }
}

TEST(LearnerPropertyTest, EveryUpdateIsOnTheSimplex) {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (LearnerAlgorithm alg :
       {LearnerAlgorithm::kMwu, LearnerAlgorithm::kFtrlEuclid, LearnerAlgorithm::kLmwu,
        LearnerAlgorithm::kOmwu, LearnerAlgorithm::kAdaHedge,
        LearnerAlgorithm::kRandomMixed}) {
    LearnerConfig c;
    c.algorithm = alg;
    c.schedule = StepSizeSchedule::Constant(0.3);
    LearnerState s = MakeLearner(c, 6);
    for (int t = 0; t < 2000; ++t) {
      std::vector<double> loss(6);
      for (double& v : loss) v = u(rng);
      s = Update(s, loss);
      double sum = 0.0;
      for (double p : s.strategy.values()) {
        ASSERT_GE(p, 0.0);
        sum += p;
      }
      ASSERT_NEAR(sum, 1.0, 1e-12) << ToString(alg);
    }
  }
}

// Average regret of MWU with mu_t = sqrt(8 ln n / t) on a loss sequence,
// from the mixed-strategy losses.
double AverageRegret(std::size_t n, int rounds,
                     const std::function<std::vector<double>(const SimplexVector&, int)>& loss) {
  LearnerConfig c;
  c.schedule = StepSizeSchedule::InverseSqrt();
  LearnerState s = MakeLearner(c, n);
  std::vector<double> total(n, 0.0);
  double incurred = 0.0;
  for (int t = 0; t < rounds; ++t) {
    std::vector<double> l = loss(s.strategy, t);
    for (std::size_t i = 0; i < n; ++i) {
      incurred += s.strategy[i] * l[i];
      total[i] += l[i];
    }
    s = Update(s, l);
  }
  return (incurred - *std::min_element(total.begin(), total.end())) / rounds;
}

TEST(LearnerPropertyTest, MwuNoRegretSanity) {
  constexpr int kT = 10000;
  for (std::size_t n : {2u, 5u, 10u}) {
    const double bound = 1.1 * 2.0 * std::sqrt(std::log(static_cast<double>(n)) / (2.0 * kT));
    std::mt19937_64 rng(107 + n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_loss = [&](const SimplexVector&, int) {
      std::vector<double> l(n);
      for (double& v : l) v = u(rng);
      return l;
    };
    // Loss 1 on the learner's currently heaviest action.
    auto chase = [&](const SimplexVector& x, int) {
      std::vector<double> l(n, 0.0);
      l[ArgMax(x.values())] = 1.0;
      return l;
    };
    // Phases that reward the previous phase's loser.
    auto phases = [&](const SimplexVector&, int t) {
      std::vector<double> l(n, 1.0);
      l[(t / 500) % n] = 0.0;
      return l;
    };
    EXPECT_LE(AverageRegret(n, kT, random_loss), bound) << n;
    EXPECT_LE(AverageRegret(n, kT, chase), bound) << n;
    EXPECT_LE(AverageRegret(n, kT, phases), bound) << n;
  }
}

TEST(ColumnPropertyTest, LrcaPeriodicityAndStepOnRuns) {
  for (std::uint64_t g = 0; g < 5; ++g) {
    PayoffMatrix a = GenerateGame({GameKind::kRandomUniform, 6, 4, 200 + g, {}});
    LearnerConfig row;
    row.schedule = StepSizeSchedule::Constant(0.4);
    ColumnConfig col;
    Trajectory tr = lastround::Run(a, row, col, 600, 0);
    const double denom = std::max(6.0 / 4.0, 2.0);
    for (const RoundRecord& r : tr.records) {
      if (r.t % 2 == 1) {
        ASSERT_EQ(r.y, tr.equilibrium.col_strategy);
        ASSERT_FALSE(r.alpha.has_value());
      } else {
        const SimplexVector& prev = tr.at(r.t - 1).x;
        const double gap = FValue(prev, a) - tr.equilibrium.value;
        ASSERT_NEAR(*r.alpha, gap / denom, 1e-12);
        double sum = 0.0;
        for (double p : r.y.values()) {
          ASSERT_GE(p, 0.0);
          sum += p;
        }
        ASSERT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace lastround
