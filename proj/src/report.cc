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

#include "lastround/report.h"

#include <charconv>
#include <cmath>

#include "json.hpp"
#include "lastround/minimax.h"

namespace lastround {

namespace {

using nlohmann::ordered_json;

ordered_json ToJson(const SimplexVector& p) { return ordered_json(p.vector()); }

ordered_json ScheduleJson(const StepSizeSchedule& s) {
  ordered_json j;
  switch (s.kind) {
    case ScheduleKind::kConstant:
      j["kind"] = "constant";
      j["mu"] = s.base;
      break;
    case ScheduleKind::kInverseSqrt:
      j["kind"] = "inverse-sqrt";
      break;
    case ScheduleKind::kCustom:
      j["kind"] = "custom";
      j["values"] = s.values;
      break;
  }
  return j;
}

// NaN and infinities are not JSON numbers.
ordered_json Number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) {
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
  }
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out) {
  out << kTrajectoryCsvHeader << '\n';
  for (const RoundRecord& r : traj.records) {
    out << r.t << ',' << FormatDouble(r.payoff) << ',' << FormatDouble(r.f_gap)
        << ',' << FormatDouble(r.re_to_eq) << ',' << FormatDouble(r.dist_sq_to_eq)
        << ',' << FormatDouble(r.instant_regret_term) << ',';
    if (r.alpha) out << FormatDouble(*r.alpha);
    out << ',';
    if (r.lyapunov_residual) out << FormatDouble(*r.lyapunov_residual);
    out << '\n';
  }
}

std::string SummaryJson(const Trajectory& traj, const std::vector<RateFit>& fits) {
  ordered_json doc;

  ordered_json& config = doc["config"];
  config["rows"] = traj.game.rows();
  config["cols"] = traj.game.cols();
  config["seed"] = traj.seed;
  config["rounds"] = traj.rounds;
  config["row_algo"] = ToString(traj.row.algorithm);
  config["schedule"] = ScheduleJson(traj.row.schedule);
  config["col_algo"] = ToString(traj.column.policy);
  config["step_mode"] =
      traj.column.step_mode ? ToString(*traj.column.step_mode) : "default";

  ordered_json& eq = doc["equilibrium"];
  eq["value"] = traj.equilibrium.value;
  eq["row_strategy"] = ToJson(traj.equilibrium.row_strategy);
  eq["col_strategy"] = ToJson(traj.equilibrium.col_strategy);
  eq["row_fully_mixed"] = traj.equilibrium.row_fully_mixed;
  eq["col_fully_mixed"] = traj.equilibrium.col_fully_mixed;

  const RoundRecord& last = traj.records.back();
  double min_residual = INFINITY;
  std::int64_t residuals = 0;
  for (const RoundRecord& r : traj.records) {
    if (r.lyapunov_residual) {
      ++residuals;
      min_residual = std::min(min_residual, *r.lyapunov_residual);
    }
  }
  ordered_json& fin = doc["final"];
  fin["t"] = last.t;
  fin["f_gap"] = Number(last.f_gap);
  fin["re_to_eq"] = Number(last.re_to_eq);
  fin["dist_sq_to_eq"] = Number(last.dist_sq_to_eq);
  fin["row_strategy"] = ToJson(last.x);
  fin["col_strategy"] = ToJson(last.y);
  fin["instant_regret"] = Number(InstantRegret(traj, traj.rounds));
  fin["cumulative_regret"] = Number(CumulativeRegret(traj, traj.rounds));
  fin["lyapunov_residuals"] = residuals;
  fin["min_lyapunov_residual"] =
      residuals > 0 ? Number(min_residual) : ordered_json(nullptr);
  fin["switched"] = traj.switched;
  fin["switch_round"] = traj.switch_round;
  fin["alpha_clamps"] = traj.alpha_clamps;
  fin["lmwu_large_step"] = traj.lmwu_large_step;

  ordered_json& rates = doc["rate_fits"];
  rates = ordered_json::array();
  for (const RateFit& f : fits) {
    ordered_json j;
    j["metric"] = ToString(f.metric);
    j["slope"] = Number(f.slope);
    j["intercept"] = Number(f.intercept);
    j["r_squared"] = Number(f.r_squared);
    j["checkpoints"] = f.checkpoints;
    j["excluded"] = f.excluded;
    rates.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace lastround
