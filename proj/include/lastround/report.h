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

#ifndef LASTROUND_REPORT_H_
#define LASTROUND_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

#include "lastround/engine.h"

namespace lastround {

inline constexpr char kTrajectoryCsvHeader[] =
    "t,payoff,f_gap,re_to_eq,dist_sq_to_eq,instant_regret_term,alpha,"
    "lyapunov_residual";

// One row per round; unset alpha / residual cells are left empty. Numbers
// use the shortest round-trip representation, so output is reproducible.
void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out);

// JSON document: config echo, final metrics and the given rate fits.
std::string SummaryJson(const Trajectory& traj, const std::vector<RateFit>& fits);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

}  // namespace lastround

#endif  // LASTROUND_REPORT_H_
