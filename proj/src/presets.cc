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

#include "lastround/presets.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lastround/minimax.h"

namespace lastround {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kResidualTolerance = -1e-9;

RowVariant Row(LearnerAlgorithm algorithm, StepSizeSchedule schedule,
               std::optional<SimplexVector> start = std::nullopt) {
  return RowVariant{algorithm, std::move(schedule), std::move(start)};
}

ColumnConfig Column(ColumnPolicyKind policy) {
  ColumnConfig c;
  c.policy = policy;
  return c;
}

std::vector<Preset> BuildTable() {
  using LA = LearnerAlgorithm;
  using SS = StepSizeSchedule;
  std::vector<Preset> t;

  const std::vector<RowVariant> mwu_sweep = {
      Row(LA::kMwu, SS::Constant(0.1)), Row(LA::kMwu, SS::Constant(0.5)),
      Row(LA::kMwu, SS::Constant(1.0)), Row(LA::kMwu, SS::InverseSqrt())};

  Preset p;
  p.name = "lemma1-check";
  p.summary = "per-step relative-entropy decrease, LRCA vs MWU";
  p.check = PresetCheck::kMwuDecrease;
  p.row_variants = mwu_sweep;
  p.column = Column(ColumnPolicyKind::kLrca);
  t.push_back(p);

  p.name = "lrca-complexity";
  p.summary = "last-round convergence of f(x_T) - v and rounds to reach 0.01";
  p.check = PresetCheck::kComplexity;
  t.push_back(p);

  p = Preset{};
  p.name = "ftrl-lyapunov";
  p.summary = "squared-distance decrease, LRCA vs Euclidean FTRL on interior games";
  p.check = PresetCheck::kFtrlLyapunov;
  p.game = GameKind::kRandomInterior;
  p.row_variants = {Row(LA::kFtrlEuclid, SS::Constant(0.5))};
  p.column = Column(ColumnPolicyKind::kLrca);
  t.push_back(p);

  p = Preset{};
  p.name = "lmwu-lyapunov";
  p.summary = "relative-entropy decrease, LRCA vs linear MWU";
  p.check = PresetCheck::kLmwuLyapunov;
  p.row_variants = {Row(LA::kLmwu, SS::Constant(0.3))};
  p.column = Column(ColumnPolicyKind::kLrca);
  t.push_back(p);

  p = Preset{};
  p.name = "lrca2-omwu";
  p.summary = "LRCA-2 vs optimistic MWU: block-wise monotone relative entropy";
  p.check = PresetCheck::kLrca2Omwu;
  p.with_matching_pennies = true;
  p.rounds = 100000;
  p.row_variants = {Row(LA::kOmwu, SS::Constant(0.1))};
  p.column = Column(ColumnPolicyKind::kLrca2);
  t.push_back(p);

  p = Preset{};
  p.name = "instant-regret-rates";
  p.summary = "log-log slope of instant regret, constant and decreasing MWU steps";
  p.check = PresetCheck::kInstantRegretRates;
  p.rounds = std::int64_t{1} << 16;
  p.row_variants = {Row(LA::kMwu, SS::Constant(0.5)), Row(LA::kMwu, SS::InverseSqrt())};
  p.column = Column(ColumnPolicyKind::kLrca);
  t.push_back(p);

  p = Preset{};
  p.name = "adahedge-switch";
  p.summary = "LRCA with AdaHedge fallback vs MWU and vs random mixed rows";
  p.check = PresetCheck::kAdaHedgeSwitch;
  p.games = 10;
  p.rounds = 100000;
  p.row_variants = {Row(LA::kMwu, SS::InverseSqrt()),
                    Row(LA::kRandomMixed, SS::Constant(1.0))};
  p.column = Column(ColumnPolicyKind::kLrcaAdaHedge);
  t.push_back(p);

  p = Preset{};
  p.name = "mwu-divergence";
  p.summary = "MWU vs MWU on matching pennies drifts away; LRCA control converges";
  p.check = PresetCheck::kMwuDivergence;
  p.game = GameKind::kMatchingPennies;
  p.rows = 2;
  p.cols = 2;
  p.games = 1;
  p.row_variants = {
      Row(LA::kMwu, SS::Constant(0.1), SimplexVector::FromWeights({0.6, 0.4}))};
  p.column = Column(ColumnPolicyKind::kMwuColumn);
  p.column.column_mu = 0.1;
  t.push_back(p);

  p = Preset{};
  p.name = "ftrl-stability";
  p.summary = "one loss A y* leaves MWU, LMWU and FTRL states unchanged";
  p.check = PresetCheck::kFtrlStability;
  p.game = GameKind::kRandomInterior;
  p.rounds = 25;
  p.row_variants = {Row(LA::kMwu, SS::Constant(0.1)), Row(LA::kLmwu, SS::Constant(0.1)),
                    Row(LA::kFtrlEuclid, SS::Constant(0.1))};
  p.column = Column(ColumnPolicyKind::kFixedMinimax);
  t.push_back(p);

  return t;
}

// Runs fn(0..count-1) over the available cores. Results are written by index,
// so the outcome does not depend on scheduling.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& fn) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct Job {
  std::size_t game = 0;
  std::size_t variant = 0;
};

std::vector<Job> Jobs(std::size_t games, std::size_t variants) {
  std::vector<Job> jobs;
  for (std::size_t v = 0; v < variants; ++v) {
    for (std::size_t g = 0; g < games; ++g) jobs.push_back({g, v});
  }
  return jobs;
}

Trajectory RunJob(const Preset& p, const std::vector<PayoffMatrix>& games,
                  const std::vector<Equilibrium>& eqs, const Job& job,
                  std::uint64_t seed, const ColumnConfig& column) {
  const RowVariant& rv = p.row_variants[job.variant];
  LearnerConfig lc;
  lc.algorithm = rv.algorithm;
  lc.schedule = rv.schedule;
  lc.initial_strategy = rv.initial_strategy;
  return Run(games[job.game], lc, column, p.rounds,
             DeriveSeed(seed, 1000 + 100 * job.variant + job.game), eqs[job.game]);
}

Assertion Check(std::string name, double measured, const std::string& cmp,
                double threshold) {
  Assertion a{std::move(name), measured, cmp, threshold, false};
  if (cmp == "<=") a.passed = measured <= threshold;
  else if (cmp == ">=") a.passed = measured >= threshold;
  else throw std::logic_error("bad comparison " + cmp);
  return a;
}

double MinResidual(const Trajectory& tr, std::int64_t* count) {
  double m = kInf;
  for (const RoundRecord& r : tr.records) {
    if (r.lyapunov_residual) {
      m = std::min(m, *r.lyapunov_residual);
      ++*count;
    }
  }
  return m;
}

template <typename RowLike>
std::string VariantLabel(const RowLike& rv) {
  std::string s = ToString(rv.algorithm);
  switch (rv.schedule.kind) {
    case ScheduleKind::kConstant:
      return s + "_mu" + std::to_string(rv.schedule.base).substr(0, 4);
    case ScheduleKind::kInverseSqrt: return s + "_invsqrt";
    case ScheduleKind::kCustom: return s + "_custom";
  }
  return s;
}

// ---------------------------------------------------------------------------

void CheckMwuDecrease(const std::vector<Trajectory>& runs, PresetReport& report) {
  double worst = kInf;
  std::int64_t count = 0;
  double re_increase = 0.0;
  for (const Trajectory& tr : runs) {
    worst = std::min(worst, MinResidual(tr, &count));
    // RE(x*||x_{2k-1}) is non-increasing wherever the residual is defined.
    for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
      if (!tr.at(2 * k).lyapunov_residual) continue;
      const SimplexVector& xs = tr.equilibrium.row_strategy;
      re_increase = std::max(re_increase,
                             RelativeEntropy(xs, tr.row_strategy(2 * k + 1)) -
                                 RelativeEntropy(xs, tr.row_strategy(2 * k - 1)));
    }
  }
  report.assertions.push_back(
      Check("min_lyapunov_residual", worst, ">=", kResidualTolerance));
  report.diagnostics.emplace_back("residuals_checked", static_cast<double>(count));
  report.diagnostics.emplace_back("max_relative_entropy_increase", re_increase);
}

void CheckComplexity(const std::vector<Trajectory>& runs, PresetReport& report) {
  constexpr double kEps = 0.01;
  double worst_gap = 0.0;
  double worst_ratio = 0.0;
  double latest_hit = 0.0;
  std::vector<std::pair<std::string, double>> per_variant;
  for (const Trajectory& tr : runs) {
    const std::string label = "max_final_f_gap_" + VariantLabel(tr.row);
    const double gap = tr.records.back().f_gap;
    worst_gap = std::max(worst_gap, gap);
    auto it = std::find_if(per_variant.begin(), per_variant.end(),
                           [&](const auto& e) { return e.first == label; });
    if (it == per_variant.end()) per_variant.emplace_back(label, gap);
    else it->second = std::max(it->second, gap);

    if (tr.row.schedule.kind != ScheduleKind::kConstant) continue;
    const double n = static_cast<double>(tr.game.rows());
    const double budget = 2.0 * 4.0 * std::log(n) / (tr.row.schedule.base * kEps * kEps);
    std::optional<std::int64_t> hit;
    for (const RoundRecord& r : tr.records) {
      if (r.f_gap <= kEps) {
        hit = r.t;
        break;
      }
    }
    // Not reached within the recorded horizon: keep playing up to the budget.
    if (!hit) {
      hit = HittingRound(tr.game, tr.row, tr.column, tr.equilibrium, kEps,
                         static_cast<std::int64_t>(std::ceil(budget)));
    }
    const double round = hit ? static_cast<double>(*hit) : kInf;
    worst_ratio = std::max(worst_ratio, round / budget);
    latest_hit = std::max(latest_hit, round);
  }
  report.assertions.push_back(Check("max_final_f_gap", worst_gap, "<=", kEps));
  report.assertions.push_back(
      Check("max_hitting_round_over_budget", worst_ratio, "<=", 1.0));
  report.diagnostics.emplace_back("latest_hitting_round", latest_hit);
  for (auto& d : per_variant) report.diagnostics.push_back(d);
}

void CheckFtrlLyapunov(const std::vector<Trajectory>& runs, PresetReport& report) {
  double worst = kInf;
  double worst_scaled = kInf;
  double min_interior = 1.0;
  std::int64_t count = 0;
  for (const Trajectory& tr : runs) {
    for (std::int64_t k = 1; 2 * k <= tr.rounds; ++k) {
      if (auto r = LyapunovResidualOmd(tr, k)) {
        worst = std::min(worst, *r);
        worst_scaled = std::min(worst_scaled, *LyapunovResidualOmdScaled(tr, k));
        ++count;
      }
    }
    std::int64_t interior = 0;
    for (const RoundRecord& r : tr.records) interior += r.row_interior ? 1 : 0;
    min_interior = std::min(min_interior, static_cast<double>(interior) /
                                              static_cast<double>(tr.rounds));
  }
  report.assertions.push_back(
      Check("min_lyapunov_residual", worst, ">=", kResidualTolerance));
  report.assertions.push_back(
      Check("min_interior_round_fraction", min_interior, ">=", 0.95));
  report.diagnostics.emplace_back("residuals_checked", static_cast<double>(count));
  report.diagnostics.emplace_back("min_mu_scaled_residual", worst_scaled);
}

void CheckLmwuLyapunov(const std::vector<Trajectory>& runs, PresetReport& report) {
  double worst = kInf;
  std::int64_t count = 0;
  bool large_step = false;
  for (const Trajectory& tr : runs) {
    worst = std::min(worst, MinResidual(tr, &count));
    large_step = large_step || tr.lmwu_large_step;
  }
  report.assertions.push_back(
      Check("min_lyapunov_residual", worst, ">=", kResidualTolerance));
  report.diagnostics.emplace_back("residuals_checked", static_cast<double>(count));
  report.diagnostics.emplace_back("lmwu_large_step", large_step ? 1.0 : 0.0);
}

void CheckLrca2Omwu(const std::vector<Trajectory>& runs, PresetReport& report) {
  constexpr std::int64_t kBurnInBlocks = 10;
  double worst_increase = 0.0;
  double worst_gap = 0.0;
  for (const Trajectory& tr : runs) {
    for (std::int64_t k = kBurnInBlocks + 1; 3 * (k + 1) <= tr.rounds; ++k) {
      const double d = tr.at(3 * k + 3).re_to_eq - tr.at(3 * k).re_to_eq;
      worst_increase = std::max(worst_increase, std::isnan(d) ? kInf : d);
    }
    worst_gap = std::max(worst_gap, tr.records.back().f_gap);
  }
  report.assertions.push_back(
      Check("max_block_relative_entropy_increase", worst_increase, "<=", 1e-9));
  report.assertions.push_back(Check("max_final_f_gap", worst_gap, "<=", 0.01));
}

void CheckInstantRegretRates(const Preset& p, const std::vector<Trajectory>& runs,
                             PresetReport& report) {
  const std::vector<std::int64_t> checkpoints = DyadicCheckpoints(8, 16);
  const std::size_t variants = p.row_variants.size();
  const std::size_t games = runs.size() / variants;
  double regret_excess = -kInf;
  const double thresholds[] = {0.6, 0.8};
  for (std::size_t v = 0; v < variants; ++v) {
    std::vector<double> mean(checkpoints.size(), 0.0);
    double worst_slope = -kInf;
    for (std::size_t g = 0; g < games; ++g) {
      const Trajectory& tr = runs[v * games + g];
      const std::vector<double> ir = InstantRegretPrefix(tr);
      const std::vector<double> cr = CumulativeRegretPrefix(tr);
      for (std::size_t t = 0; t < ir.size(); ++t) {
        regret_excess = std::max(regret_excess, cr[t] - ir[t]);
      }
      std::vector<double> at(checkpoints.size());
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        at[c] = ir[checkpoints[c] - 1];
        mean[c] += at[c] / static_cast<double>(games);
      }
      try {
        worst_slope = std::max(
            worst_slope, FitRate(checkpoints, at, RateMetric::kInstantRegret).slope);
      } catch (const std::invalid_argument&) {
        // Fewer than five positive checkpoints: regret vanished.
      }
    }
    const RateFit fit = FitRate(checkpoints, mean, RateMetric::kInstantRegret);
    const std::string label = VariantLabel(p.row_variants[v]);
    report.assertions.push_back(Check("slope_mean_instant_regret_" + label, fit.slope,
                                      "<=", thresholds[std::min<std::size_t>(v, 1)]));
    report.diagnostics.emplace_back("r_squared_" + label, fit.r_squared);
    report.diagnostics.emplace_back("max_per_game_slope_" + label, worst_slope);
  }
  report.assertions.push_back(
      Check("max_regret_minus_instant_regret", regret_excess, "<=", 1e-9));
}

void CheckAdaHedgeSwitch(const Preset& p, const std::vector<Trajectory>& runs,
                         PresetReport& report) {
  const std::size_t games = runs.size() / p.row_variants.size();
  double switched = 0.0;
  for (std::size_t g = 0; g < games; ++g) switched += runs[g].switched ? 1.0 : 0.0;

  double worst_ratio = 0.0;
  double adversary_switched = 0.0;
  for (std::size_t g = games; g < runs.size(); ++g) {
    const Trajectory& tr = runs[g];
    const std::vector<double> regret = CumulativeRegretPrefix(tr);
    std::vector<std::int64_t> checkpoints;
    for (std::int64_t t = 1; t <= tr.rounds; t *= 2) checkpoints.push_back(t);
    checkpoints.push_back(tr.rounds);
    for (std::int64_t t : checkpoints) {
      const double bound = 4.0 * SwitchThreshold(tr.game.rows(), t);
      worst_ratio = std::max(worst_ratio, regret[t - 1] / bound);
    }
    adversary_switched += tr.switched ? 1.0 : 0.0;
  }
  report.assertions.push_back(Check("games_switched_vs_mwu", switched, "<=", 0.0));
  report.assertions.push_back(
      Check("max_regret_over_bound_vs_random_row", worst_ratio, "<=", 1.0));
  report.diagnostics.emplace_back("games_switched_vs_random_row", adversary_switched);
}

double TailDistance(const Trajectory& tr, bool take_min, bool joint) {
  double out = take_min ? kInf : 0.0;
  for (std::int64_t t = tr.rounds / 2 + 1; t <= tr.rounds; ++t) {
    const RoundRecord& r = tr.at(t);
    double d = r.dist_sq_to_eq;
    if (joint) d += EuclidDistSq(r.y, tr.equilibrium.col_strategy);
    d = std::sqrt(d);
    out = take_min ? std::min(out, d) : std::max(out, d);
  }
  return out;
}

void CheckMwuDivergence(const Preset& p, const std::vector<Trajectory>& runs,
                        PresetReport& report) {
  const Trajectory& mwu = runs.front();
  // Control: the same row learner and start against LRCA.
  LearnerConfig lc;
  lc.algorithm = p.row_variants.front().algorithm;
  lc.schedule = p.row_variants.front().schedule;
  lc.initial_strategy = p.row_variants.front().initial_strategy;
  const Trajectory lrca = Run(mwu.game, lc, Column(ColumnPolicyKind::kLrca), p.rounds,
                              mwu.seed, mwu.equilibrium);
  report.assertions.push_back(
      Check("min_tail_distance_vs_mwu_column", TailDistance(mwu, true, false), ">=", 0.1));
  report.assertions.push_back(
      Check("max_tail_distance_vs_lrca", TailDistance(lrca, false, false), "<=", 0.01));
  report.diagnostics.emplace_back("min_tail_joint_distance_vs_mwu_column",
                                  TailDistance(mwu, true, true));
  report.diagnostics.emplace_back("max_tail_distance_vs_mwu_column",
                                  TailDistance(mwu, false, false));
}

void CheckFtrlStability(const Preset& p, const std::vector<PayoffMatrix>& games,
                        const std::vector<Equilibrium>& eqs, std::uint64_t seed,
                        PresetReport& report) {
  constexpr double kEqualizeTolerance = 1e-9;
  double worst = 0.0;
  double qualifying = 0.0;
  for (std::size_t g = 0; g < games.size(); ++g) {
    const std::vector<double> feed = games[g].RowLosses(eqs[g].col_strategy.values());
    const bool equalizes = std::all_of(feed.begin(), feed.end(), [&](double l) {
      return std::abs(l - eqs[g].value) <= kEqualizeTolerance;
    });
    if (!equalizes) continue;
    qualifying += 1.0;
    for (std::size_t v = 0; v < p.row_variants.size(); ++v) {
      LearnerConfig lc;
      lc.algorithm = p.row_variants[v].algorithm;
      lc.schedule = p.row_variants[v].schedule;
      LearnerState s = MakeLearner(lc, games[g].rows());
      // Warm up on seeded random losses so the state is not uniform.
      std::mt19937_64 rng(DeriveSeed(seed, 100 * v + g));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::int64_t t = 0; t < p.rounds; ++t) {
        std::vector<double> loss(games[g].rows());
        for (double& l : loss) l = unit(rng);
        s = Update(s, loss);
      }
      const LearnerState after = Update(s, feed);
      for (std::size_t i = 0; i < s.actions; ++i) {
        worst = std::max(worst, std::abs(after.strategy[i] - s.strategy[i]));
        if (!s.theta.empty()) {
          worst = std::max(worst, lc.schedule.base * std::abs(after.theta[i] - s.theta[i]));
        }
      }
    }
  }
  report.assertions.push_back(Check("max_state_change", worst, "<=", 1e-10));
  report.assertions.push_back(Check("qualifying_games", qualifying, ">=", 1.0));
}

}  // namespace

const std::vector<Preset>& PresetTable() {
  static const std::vector<Preset> table = BuildTable();
  return table;
}

const Preset* FindPreset(const std::string& name) {
  for (const Preset& p : PresetTable()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool PresetReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

const Assertion& PresetReport::assertion(const std::string& name) const {
  for (const Assertion& a : assertions) {
    if (a.name == name) return a;
  }
  throw std::out_of_range("no assertion named " + name);
}

std::vector<PayoffMatrix> PresetGames(const Preset& preset, std::uint64_t seed) {
  std::vector<PayoffMatrix> games;
  if (preset.with_matching_pennies) {
    games.push_back(GenerateGame({GameKind::kMatchingPennies, 2, 2, 0, {}}));
  }
  for (int g = 0; g < preset.games; ++g) {
    games.push_back(GenerateGame(
        {preset.game, preset.rows, preset.cols, DeriveSeed(seed, g), {}}));
  }
  return games;
}

PresetReport RunPreset(const Preset& preset, std::optional<std::uint64_t> seed) {
  const auto start = std::chrono::steady_clock::now();
  PresetReport report;
  report.preset = preset.name;
  report.seed = seed.value_or(preset.seed);

  const std::vector<PayoffMatrix> games = PresetGames(preset, report.seed);
  std::vector<Equilibrium> eqs(games.size());
  ParallelFor(games.size(),
              [&](std::size_t g) { eqs[g] = SolveMinimax(games[g]).equilibrium; });

  if (preset.check == PresetCheck::kFtrlStability) {
    CheckFtrlStability(preset, games, eqs, report.seed, report);
  } else {
    const std::vector<Job> jobs = Jobs(games.size(), preset.row_variants.size());
    std::vector<Trajectory> runs(jobs.size());
    ParallelFor(jobs.size(), [&](std::size_t i) {
      runs[i] = RunJob(preset, games, eqs, jobs[i], report.seed, preset.column);
    });
    switch (preset.check) {
      case PresetCheck::kMwuDecrease: CheckMwuDecrease(runs, report); break;
      case PresetCheck::kComplexity: CheckComplexity(runs, report); break;
      case PresetCheck::kFtrlLyapunov: CheckFtrlLyapunov(runs, report); break;
      case PresetCheck::kLmwuLyapunov: CheckLmwuLyapunov(runs, report); break;
      case PresetCheck::kLrca2Omwu: CheckLrca2Omwu(runs, report); break;
      case PresetCheck::kInstantRegretRates:
        CheckInstantRegretRates(preset, runs, report);
        break;
      case PresetCheck::kAdaHedgeSwitch: CheckAdaHedgeSwitch(preset, runs, report); break;
      case PresetCheck::kMwuDivergence: CheckMwuDivergence(preset, runs, report); break;
      case PresetCheck::kFtrlStability: break;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string PresetReportJson(const PresetReport& report) {
  using nlohmann::ordered_json;
  auto number = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
  };
  ordered_json doc;
  doc["preset"] = report.preset;
  doc["seed"] = report.seed;
  doc["passed"] = report.passed();
  doc["assertions"] = ordered_json::array();
  for (const Assertion& a : report.assertions) {
    ordered_json j;
    j["name"] = a.name;
    j["measured"] = number(a.measured);
    j["comparison"] = a.comparison;
    j["threshold"] = number(a.threshold);
    j["passed"] = a.passed;
    doc["assertions"].push_back(std::move(j));
  }
  ordered_json diag = ordered_json::object();
  for (const auto& [name, value] : report.diagnostics) diag[name] = number(value);
  doc["diagnostics"] = std::move(diag);
  return doc.dump(2) + "\n";
}

}  // namespace lastround
