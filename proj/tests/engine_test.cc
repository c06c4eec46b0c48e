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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "lastround/minimax.h"
#include "lastround/report.h"

namespace lastround {
namespace {

std::vector<double> Entries(const PayoffMatrix& a) {
  return {a.entries().begin(), a.entries().end()};
}

LearnerConfig Row(LearnerAlgorithm a, StepSizeSchedule s) {
  LearnerConfig c;
  c.algorithm = a;
  c.schedule = std::move(s);
  return c;
}

ColumnConfig Col(ColumnPolicyKind k) {
  ColumnConfig c;
  c.policy = k;
  return c;
}

PayoffMatrix Random5(std::uint64_t i) {
  return GenerateGame({GameKind::kRandomUniform, 5, 5, DeriveSeed(31, i), {}});
}

bool SameTrajectory(const Trajectory& a, const Trajectory& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const RoundRecord& x = a.records[i];
    const RoundRecord& y = b.records[i];
    if (!(x.x == y.x) || !(x.y == y.y) || x.payoff != y.payoff || x.f_gap != y.f_gap ||
        x.alpha != y.alpha || x.lyapunov_residual != y.lyapunov_residual) {
      return false;
    }
  }
  return a.final_row_strategy == b.final_row_strategy;
}

TEST(GenerateGameTest, Examples) {
  PayoffMatrix mp = GenerateGame({GameKind::kMatchingPennies, 2, 2, 0, {}});
  EXPECT_EQ(Entries(mp), (std::vector<double>{1, 0, 0, 1}));
  PayoffMatrix d = GenerateGame({GameKind::kDerived2x2, 2, 2, 0, {}});
  EXPECT_EQ(Entries(d), (std::vector<double>{0.8, 0.2, 0.3, 0.6}));
  PayoffMatrix a = GenerateGame({GameKind::kRandomUniform, 4, 3, 42, {}});
  PayoffMatrix b = GenerateGame({GameKind::kRandomUniform, 4, 3, 42, {}});
  EXPECT_EQ(Entries(a), Entries(b));
  EXPECT_NE(Entries(a), Entries(GenerateGame({GameKind::kRandomUniform, 4, 3, 43, {}})));
  EXPECT_THROW(GenerateGame({GameKind::kMatchingPennies, 2, 3, 0, {}}), DimensionError);
  EXPECT_THROW(GenerateGame({GameKind::kFromFile, 0, 0, 0, "/no/such.csv"}),
               std::invalid_argument);
}

TEST(GenerateGameTest, InteriorGamesAreInterior) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    PayoffMatrix a = GenerateGame({GameKind::kRandomInterior, 5, 5, s, {}});
    Equilibrium eq = SolveMinimax(a).equilibrium;
    EXPECT_TRUE(eq.row_fully_mixed);
    EXPECT_TRUE(DetectFullyMixed(a, eq).col_equalizes);
  }
}

TEST(DeriveSeedTest, DistinctStreams) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(5, 7), DeriveSeed(5, 7));
}

TEST(RunTest, SingleRoundAtEquilibrium) {
  PayoffMatrix mp({{1, 0}, {0, 1}});
  Trajectory tr = lastround::Run(mp, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.1)),
                      Col(ColumnPolicyKind::kFixedMinimax), 1, 0);
  ASSERT_EQ(tr.records.size(), 1u);
  const RoundRecord& r = tr.at(1);
  EXPECT_EQ(r.x, SimplexVector({0.5, 0.5}));
  EXPECT_NEAR(r.y[0], 0.5, 1e-12);
  EXPECT_NEAR(r.payoff, 0.5, 1e-12);
  EXPECT_NEAR(r.f_gap, 0.0, 1e-12);
}

TEST(RunTest, ZeroStepFreezesDynamics) {
  Trajectory tr = lastround::Run(Random5(0), Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0)),
                      Col(ColumnPolicyKind::kFixedMinimax), 50, 0);
  for (const RoundRecord& r : tr.records) {
    EXPECT_EQ(r.x, tr.at(1).x);
    EXPECT_EQ(r.y, tr.at(1).y);
    EXPECT_EQ(r.payoff, tr.at(1).payoff);
  }
  EXPECT_THROW(lastround::Run(Random5(0), LearnerConfig{}, ColumnConfig{}, 0, 0),
               std::invalid_argument);
}

TEST(RunTest, BitIdenticalReruns) {
  for (LearnerAlgorithm a : {LearnerAlgorithm::kMwu, LearnerAlgorithm::kFtrlEuclid,
                             LearnerAlgorithm::kRandomMixed}) {
    LearnerConfig row = Row(a, StepSizeSchedule::Constant(0.3));
    Trajectory x = lastround::Run(Random5(1), row, Col(ColumnPolicyKind::kLrcaAdaHedge), 2000, 77);
    Trajectory y = lastround::Run(Random5(1), row, Col(ColumnPolicyKind::kLrcaAdaHedge), 2000, 77);
    EXPECT_TRUE(SameTrajectory(x, y)) << ToString(a);
  }
}

TEST(RunTest, BatchMatchesSerialInOrder) {
  std::vector<RunSpec> specs;
  for (std::uint64_t g = 0; g < 6; ++g) {
    specs.push_back({Random5(g), Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                     Col(ColumnPolicyKind::kLrca), 500, g, std::nullopt});
  }
  std::vector<Trajectory> batch = RunBatch(specs, 4);
  ASSERT_EQ(batch.size(), specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    Trajectory serial = lastround::Run(specs[i].game, specs[i].row, specs[i].column, 500, specs[i].seed);
    EXPECT_TRUE(SameTrajectory(batch[i], serial));
  }
}

TEST(RegretTest, HandTrajectory) {
  PayoffMatrix mp({{1, 0}, {0, 1}});
  Trajectory tr;
  tr.game = mp;
  tr.rounds = 1;
  RoundRecord r;
  r.t = 1;
  r.x = SimplexVector({1, 0});
  r.y = SimplexVector({0, 1});
  r.payoff = 0.0;
  r.instant_regret_term = 1.0;
  tr.records.push_back(r);
  EXPECT_EQ(InstantRegret(tr, 1), 1.0);
  EXPECT_EQ(CumulativeRegret(tr, 1), 1.0);
  EXPECT_EQ(InstantRegret(tr, 0), 0.0);
  EXPECT_THROW(InstantRegret(tr, 2), std::out_of_range);
}

TEST(RegretTest, FrozenAtEquilibriumIsZero) {
  PayoffMatrix mp({{1, 0}, {0, 1}});
  Trajectory tr = lastround::Run(mp, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.3)),
                      Col(ColumnPolicyKind::kLrca), 100, 0);
  EXPECT_NEAR(InstantRegret(tr, 100), 0.0, 1e-12);
  EXPECT_NEAR(CumulativeRegret(tr, 100), 0.0, 1e-12);
}

TEST(RegretTest, CumulativeNeverExceedsInstant) {
  for (std::uint64_t g = 0; g < 5; ++g) {
    for (ColumnPolicyKind k : {ColumnPolicyKind::kLrca, ColumnPolicyKind::kMwuColumn,
                               ColumnPolicyKind::kBestResponseLast}) {
      Trajectory tr = lastround::Run(Random5(g), Row(LearnerAlgorithm::kMwu, StepSizeSchedule::InverseSqrt()),
                          Col(k), 5000, g);
      std::vector<double> ir = InstantRegretPrefix(tr), cr = CumulativeRegretPrefix(tr);
      for (std::size_t t = 0; t < ir.size(); ++t) ASSERT_LE(cr[t], ir[t] + 1e-9);
    }
  }
}

TEST(LyapunovTest, MwuResidualNonNegativeOnRandomGames) {
  for (std::uint64_t g = 0; g < 8; ++g) {
    for (double mu : {0.1, 0.5, 1.0}) {
      Trajectory tr = lastround::Run(Random5(g), Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(mu)),
                          Col(ColumnPolicyKind::kLrca), 2000, g);
      std::int64_t defined = 0;
      for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
        auto r = LyapunovResidualMwu(tr, k);
        ASSERT_TRUE(r.has_value());
        ++defined;
        ASSERT_GE(*r, -1e-9) << "game " << g << " mu " << mu << " k " << k;
        // Monotone Lyapunov: RE(x*||x_{2k-1}) does not increase.
        const SimplexVector& xs = tr.equilibrium.row_strategy;
        ASSERT_LE(RelativeEntropy(xs, tr.row_strategy(2 * k + 1)),
                  RelativeEntropy(xs, tr.row_strategy(2 * k - 1)) + 1e-9);
      }
      EXPECT_EQ(defined, 1000);
    }
  }
}

TEST(LyapunovTest, ResidualZeroAtEquilibrium) {
  PayoffMatrix mp({{1, 0}, {0, 1}});
  Trajectory tr = lastround::Run(mp, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                      Col(ColumnPolicyKind::kLrca), 20, 0);
  for (std::int64_t k = 1; k <= 10; ++k) EXPECT_NEAR(*LyapunovResidualMwu(tr, k), 0.0, 1e-15);
  Trajectory omd = lastround::Run(mp, Row(LearnerAlgorithm::kFtrlEuclid, StepSizeSchedule::Constant(0.5)),
                       Col(ColumnPolicyKind::kLrca), 20, 0);
  for (std::int64_t k = 1; k <= 10; ++k) EXPECT_NEAR(*LyapunovResidualOmd(omd, k), 0.0, 1e-15);
}

TEST(LyapunovTest, PreconditionsGateResiduals) {
  PayoffMatrix a = Random5(3);
  // Wrong learner for the residual kind.
  Trajectory mwu = lastround::Run(a, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                       Col(ColumnPolicyKind::kLrca), 10, 0);
  EXPECT_FALSE(LyapunovResidualOmd(mwu, 1).has_value());
  EXPECT_FALSE(LyapunovResidualLmwu(mwu, 1).has_value());
  // Not LRCA.
  Trajectory fixed = lastround::Run(a, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                         Col(ColumnPolicyKind::kFixedMinimax), 10, 0);
  EXPECT_FALSE(LyapunovResidualMwu(fixed, 1).has_value());
  // mu > 1.
  Trajectory big = lastround::Run(a, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(1.5)),
                       Col(ColumnPolicyKind::kLrca), 10, 0);
  EXPECT_FALSE(LyapunovResidualMwu(big, 1).has_value());
  // Increasing schedule.
  Trajectory up = lastround::Run(a, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Custom({0.1, 0.2})),
                      Col(ColumnPolicyKind::kLrca), 10, 0);
  EXPECT_FALSE(LyapunovResidualMwu(up, 1).has_value());
  // Out of range k.
  EXPECT_FALSE(LyapunovResidualMwu(mwu, 6).has_value());
  EXPECT_FALSE(LyapunovResidualMwu(mwu, 0).has_value());
  // Pure-strategy equilibrium blocks the FTRL residual.
  PayoffMatrix saddle({{0.2, 0.1}, {0.9, 0.8}});
  Trajectory omd = lastround::Run(saddle, Row(LearnerAlgorithm::kFtrlEuclid, StepSizeSchedule::Constant(0.5)),
                       Col(ColumnPolicyKind::kLrca), 10, 0);
  ASSERT_FALSE(omd.equilibrium.row_fully_mixed);
  EXPECT_FALSE(LyapunovResidualOmd(omd, 1).has_value());
}

TEST(LyapunovTest, LmwuResidualNonNegative) {
  for (std::uint64_t g = 0; g < 5; ++g) {
    Trajectory tr = lastround::Run(Random5(g), Row(LearnerAlgorithm::kLmwu, StepSizeSchedule::Constant(0.3)),
                        Col(ColumnPolicyKind::kLrca), 2000, g);
    for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
      auto r = LyapunovResidualLmwu(tr, k);
      ASSERT_TRUE(r.has_value());
      ASSERT_GE(*r, -1e-9);
    }
  }
}

TEST(LyapunovTest, OmdScaledResidualNonNegativeOnInteriorGames) {
  // The decrease the projection argument delivers is mu * alpha * (f - v).
  for (std::uint64_t g = 0; g < 5; ++g) {
    PayoffMatrix a = GenerateGame({GameKind::kRandomInterior, 4, 4, g, {}});
    Trajectory tr = lastround::Run(a, Row(LearnerAlgorithm::kFtrlEuclid, StepSizeSchedule::Constant(0.5)),
                        Col(ColumnPolicyKind::kLrca), 2000, g);
    for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
      if (auto r = LyapunovResidualOmdScaled(tr, k)) ASSERT_GE(*r, -1e-9);
    }
  }
}

TEST(StabilityTest, EvenRoundsHoldStill) {
  // With A y* = v 1, the stabilizing round leaves the row strategy in place.
  for (std::uint64_t g = 0; g < 5; ++g) {
    PayoffMatrix a = GenerateGame({GameKind::kRandomInterior, 5, 5, g, {}});
    for (LearnerAlgorithm alg : {LearnerAlgorithm::kMwu, LearnerAlgorithm::kLmwu,
                                 LearnerAlgorithm::kFtrlEuclid}) {
      Trajectory tr = lastround::Run(a, Row(alg, StepSizeSchedule::Constant(0.2)),
                          Col(ColumnPolicyKind::kLrca), 400, g);
      for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
        const SimplexVector& odd = tr.at(2 * k - 1).x;
        const SimplexVector& even = tr.at(2 * k).x;
        for (std::size_t i = 0; i < odd.size(); ++i) {
          ASSERT_NEAR(odd[i], even[i], 1e-10) << ToString(alg);
        }
      }
    }
  }
}

TEST(HittingRoundTest, AgreesWithRecordedRun) {
  PayoffMatrix a = Random5(4);
  LearnerConfig row = Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5));
  Trajectory tr = lastround::Run(a, row, Col(ColumnPolicyKind::kLrca), 3000, 0);
  std::optional<std::int64_t> expect;
  for (const RoundRecord& r : tr.records) {
    if (r.f_gap <= 0.02) {
      expect = r.t;
      break;
    }
  }
  EXPECT_EQ(HittingRound(a, row, Col(ColumnPolicyKind::kLrca), tr.equilibrium, 0.02, 3000),
            expect);
  EXPECT_FALSE(HittingRound(a, row, Col(ColumnPolicyKind::kLrca), tr.equilibrium, -1.0, 50));
}

TEST(FitRateTest, SyntheticSlopes) {
  std::vector<std::int64_t> cp = DyadicCheckpoints(8, 16);
  ASSERT_EQ(cp.size(), 9u);
  EXPECT_EQ(cp.front(), 256);
  std::vector<double> lin, three_quarter;
  for (std::int64_t t : cp) {
    lin.push_back(3.0 * static_cast<double>(t));
    three_quarter.push_back(0.7 * std::pow(static_cast<double>(t), 0.75));
  }
  EXPECT_NEAR(FitRate(cp, lin, RateMetric::kInstantRegret).slope, 1.0, 1e-12);
  RateFit f = FitRate(cp, three_quarter, RateMetric::kInstantRegret);
  EXPECT_NEAR(f.slope, 0.75, 1e-9);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(FitRateTest, ExcludesNonPositiveAndNeedsFivePoints) {
  std::vector<std::int64_t> cp = DyadicCheckpoints(1, 7);
  std::vector<double> v = {0.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  RateFit f = FitRate(cp, v, RateMetric::kFGap);
  EXPECT_EQ(f.excluded, (std::vector<std::int64_t>{2}));
  EXPECT_NEAR(f.slope, 1.0, 1e-12);
  std::vector<double> sparse = {0.0, 0.0, 0.0, 8.0, 16.0, 32.0, 64.0};
  EXPECT_THROW(FitRate(cp, sparse, RateMetric::kFGap), std::invalid_argument);
  std::vector<std::int64_t> bad = {4, 2, 8, 16, 32};
  EXPECT_THROW(FitRate(bad, std::vector<double>(5, 1.0), RateMetric::kFGap),
               std::invalid_argument);
}

TEST(ReportTest, CsvHeaderAndEmptyOptionals) {
  PayoffMatrix d = GenerateGame({GameKind::kDerived2x2, 2, 2, 0, {}});
  Trajectory tr = lastround::Run(d, Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                      Col(ColumnPolicyKind::kLrca), 4, 0);
  std::ostringstream out;
  WriteTrajectoryCsv(tr, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,payoff,f_gap,re_to_eq,dist_sq_to_eq,instant_regret_term,alpha,"
                  "lyapunov_residual");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
  EXPECT_EQ(line.substr(line.size() - 2), ",,");
  std::getline(in, line);
  EXPECT_NE(line.back(), ',');
  int rows = 2;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(ReportTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3, 7.0 / 15, 1e-300, 123456.789}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(INFINITY), "inf");
}

TEST(ReportTest, SummaryIsDeterministic) {
  Trajectory tr = lastround::Run(Random5(2), Row(LearnerAlgorithm::kMwu, StepSizeSchedule::Constant(0.5)),
                      Col(ColumnPolicyKind::kLrca), 512, 0);
  RateFit fit = FitRate(tr, RateMetric::kInstantRegret, DyadicCheckpoints(4, 9));
  std::string a = SummaryJson(tr, {fit}), b = SummaryJson(tr, {fit});
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"rate_fits\""), std::string::npos);
  EXPECT_NE(a.find("\"row_algo\": \"mwu\""), std::string::npos);
}

}  // namespace
}  // namespace lastround
