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

// Python bindings. Trajectories come back as dicts of numpy arrays; unset
// alpha and residual entries are NaN.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lastround/engine.h"
#include "lastround/minimax.h"
#include "lastround/presets.h"
#include "lastround/report.h"
#include "lastround/simplex_lp.h"

namespace py = pybind11;

namespace lastround {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array NewArray(std::vector<py::ssize_t> shape) { return Array(std::move(shape)); }

PayoffMatrix ToMatrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("payoff matrix must be two-dimensional");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto m = static_cast<std::size_t>(a.shape(1));
  return PayoffMatrix(n, m, std::vector<double>(a.data(), a.data() + n * m));
}

Array FromMatrix(const PayoffMatrix& a) {
  Array out = NewArray({static_cast<py::ssize_t>(a.rows()), static_cast<py::ssize_t>(a.cols())});
  std::copy(a.entries().begin(), a.entries().end(), out.mutable_data());
  return out;
}

Array FromVector(std::span<const double> v) {
  Array out = NewArray({static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict EquilibriumDict(const Equilibrium& eq) {
  py::dict d;
  d["value"] = eq.value;
  d["row_strategy"] = FromVector(eq.row_strategy.values());
  d["col_strategy"] = FromVector(eq.col_strategy.values());
  d["row_fully_mixed"] = eq.row_fully_mixed;
  d["col_fully_mixed"] = eq.col_fully_mixed;
  return d;
}

py::dict SolveMinimaxPy(const Array& a) {
  const PayoffMatrix game = ToMatrix(a);
  SolverReport r = SolveMinimax(game);
  py::dict d = EquilibriumDict(r.equilibrium);
  d["duality_gap"] = r.duality_gap;
  d["iterations"] = r.iterations;
  return d;
}

Array GenerateGamePy(const std::string& kind, std::size_t rows, std::size_t cols,
                     std::uint64_t seed, const std::string& path) {
  return FromMatrix(GenerateGame({ParseGameKind(kind), rows, cols, seed, path}));
}

StepSizeSchedule MakeSchedule(const std::string& schedule, double mu) {
  if (schedule == "constant") return StepSizeSchedule::Constant(mu);
  if (schedule == "inverse-sqrt") return StepSizeSchedule::InverseSqrt();
  throw std::invalid_argument("unknown schedule: " + schedule);
}

py::dict TrajectoryDict(const Trajectory& traj) {
  const std::size_t rounds = traj.records.size();
  const std::size_t n = traj.game.rows(), m = traj.game.cols();
  const auto T = static_cast<py::ssize_t>(rounds);
  Array t = NewArray({T}), payoff = NewArray({T}), f_gap = NewArray({T}), re = NewArray({T}),
        dist = NewArray({T}), irt = NewArray({T}), alpha = NewArray({T}),
        residual = NewArray({T}), x = NewArray({T, static_cast<py::ssize_t>(n)}),
        y = NewArray({T, static_cast<py::ssize_t>(m)});
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < rounds; ++k) {
    const RoundRecord& r = traj.records[k];
    t.mutable_data()[k] = static_cast<double>(r.t);
    payoff.mutable_data()[k] = r.payoff;
    f_gap.mutable_data()[k] = r.f_gap;
    re.mutable_data()[k] = r.re_to_eq;
    dist.mutable_data()[k] = r.dist_sq_to_eq;
    irt.mutable_data()[k] = r.instant_regret_term;
    alpha.mutable_data()[k] = r.alpha.value_or(kNan);
    residual.mutable_data()[k] = r.lyapunov_residual.value_or(kNan);
    std::copy(r.x.values().begin(), r.x.values().end(), x.mutable_data() + k * n);
    std::copy(r.y.values().begin(), r.y.values().end(), y.mutable_data() + k * m);
  }
  py::dict d;
  d["t"] = t;
  d["payoff"] = payoff;
  d["f_gap"] = f_gap;
  d["re_to_eq"] = re;
  d["dist_sq_to_eq"] = dist;
  d["instant_regret_term"] = irt;
  d["alpha"] = alpha;
  d["lyapunov_residual"] = residual;
  d["x"] = x;
  d["y"] = y;
  d["equilibrium"] = EquilibriumDict(traj.equilibrium);
  d["final_row_strategy"] = FromVector(traj.final_row_strategy.values());
  d["instant_regret"] = FromVector(InstantRegretPrefix(traj));
  d["cumulative_regret"] = FromVector(CumulativeRegretPrefix(traj));
  d["switched"] = traj.switched;
  d["switch_round"] = traj.switch_round;
  d["alpha_clamps"] = traj.alpha_clamps;
  std::ostringstream csv;
  WriteTrajectoryCsv(traj, csv);
  d["csv"] = csv.str();
  d["summary_json"] = SummaryJson(traj, {});
  return d;
}

py::dict RunPy(const Array& game, const std::string& row_algo, double mu,
               const std::string& schedule, const std::string& col_algo,
               const std::optional<std::string>& step_mode, std::int64_t rounds,
               std::uint64_t seed) {
  LearnerConfig row;
  row.algorithm = ParseLearnerAlgorithm(row_algo);
  row.schedule = MakeSchedule(schedule, mu);
  ColumnConfig column;
  column.policy = ParseColumnPolicy(col_algo);
  if (step_mode) column.step_mode = ParseStepMode(*step_mode);
  column.row_step_hint = row.schedule;
  column.column_mu = mu;
  const PayoffMatrix a = ToMatrix(game);
  Trajectory traj;
  {
    py::gil_scoped_release release;
    traj = Run(a, row, column, rounds, seed);
  }
  return TrajectoryDict(traj);
}

py::dict RunPresetPy(const std::string& name, std::optional<std::uint64_t> seed) {
  const Preset* preset = FindPreset(name);
  if (preset == nullptr) throw std::invalid_argument("unknown preset: " + name);
  PresetReport report;
  {
    py::gil_scoped_release release;
    report = RunPreset(*preset, seed);
  }
  py::list assertions;
  for (const Assertion& a : report.assertions) {
    py::dict d;
    d["name"] = a.name;
    d["measured"] = a.measured;
    d["comparison"] = a.comparison;
    d["threshold"] = a.threshold;
    d["passed"] = a.passed;
    assertions.append(d);
  }
  py::dict diagnostics;
  for (const auto& [k, v] : report.diagnostics) diagnostics[py::str(k)] = v;
  py::dict d;
  d["preset"] = report.preset;
  d["seed"] = report.seed;
  d["passed"] = report.passed();
  d["assertions"] = assertions;
  d["diagnostics"] = diagnostics;
  d["report_json"] = PresetReportJson(report);
  return d;
}

RateMetric ParseMetric(const std::string& name) {
  for (RateMetric m : {RateMetric::kInstantRegret, RateMetric::kFGap,
                       RateMetric::kRelativeEntropy}) {
    if (ToString(m) == name) return m;
  }
  throw std::invalid_argument("unknown metric: " + name);
}

py::dict FitRatePy(const std::vector<std::int64_t>& checkpoints,
                   const std::vector<double>& values, const std::string& metric) {
  RateFit f = FitRate(checkpoints, values, ParseMetric(metric));
  py::dict d;
  d["metric"] = ToString(f.metric);
  d["slope"] = f.slope;
  d["intercept"] = f.intercept;
  d["r_squared"] = f.r_squared;
  d["checkpoints"] = f.checkpoints;
  d["excluded"] = f.excluded;
  return d;
}

}  // namespace
}  // namespace lastround

PYBIND11_MODULE(_lastround, m) {
  using namespace lastround;
  m.doc() = "Repeated zero-sum matrix games against an informed column player.";
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("solve_minimax", &SolveMinimaxPy, py::arg("game"),
        "Minimax equilibrium of A (row minimizes x^T A y).");
  m.def("generate_game", &GenerateGamePy, py::arg("kind") = "random-uniform",
        py::arg("rows") = 5, py::arg("cols") = 5, py::arg("seed") = 0,
        py::arg("path") = "");
  m.def("load_matrix_csv",
        [](const std::string& path) { return FromMatrix(LoadMatrixCsv(path)); },
        py::arg("path"));
  m.def("project_simplex",
        [](const std::vector<double>& z) { return FromVector(ProjectSimplex(z).values()); },
        py::arg("z"));
  m.def("derive_seed", &DeriveSeed, py::arg("base"), py::arg("index"));
  m.def("run", &RunPy, py::arg("game"), py::arg("row_algo") = "mwu", py::arg("mu") = 0.1,
        py::arg("schedule") = "constant", py::arg("col_algo") = "lrca",
        py::arg("step_mode") = std::nullopt, py::arg("rounds") = 1000,
        py::arg("seed") = 0);
  m.def("run_preset", &RunPresetPy, py::arg("name"), py::arg("seed") = std::nullopt);
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const Preset& p : PresetTable()) names.push_back(p.name);
    return names;
  });
  m.def("fit_rate", &FitRatePy, py::arg("checkpoints"), py::arg("values"),
        py::arg("metric") = "IR_T");
  m.attr("TRAJECTORY_CSV_HEADER") = kTrajectoryCsvHeader;
}
