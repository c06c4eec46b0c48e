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

#ifndef LASTROUND_PRESETS_H_
#define LASTROUND_PRESETS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lastround/column_policies.h"
#include "lastround/engine.h"
#include "lastround/learners.h"

// Named experiments. Each preset is a row of a table: an ensemble of games,
// one or more row learners, a column policy and a horizon, plus the check
// applied to the resulting runs.

namespace lastround {

enum class PresetCheck {
  kMwuDecrease,
  kComplexity,
  kFtrlLyapunov,
  kLmwuLyapunov,
  kLrca2Omwu,
  kInstantRegretRates,
  kAdaHedgeSwitch,
  kMwuDivergence,
  kFtrlStability,
};

struct RowVariant {
  LearnerAlgorithm algorithm = LearnerAlgorithm::kMwu;
  StepSizeSchedule schedule;
  std::optional<SimplexVector> initial_strategy;
};

struct Preset {
  std::string name;
  std::string summary;
  PresetCheck check = PresetCheck::kMwuDecrease;
  GameKind game = GameKind::kRandomUniform;
  std::size_t rows = 5;
  std::size_t cols = 5;
  int games = 20;
  // Matching pennies is prepended to the ensemble.
  bool with_matching_pennies = false;
  std::int64_t rounds = 10000;
  std::vector<RowVariant> row_variants;
  ColumnConfig column;
  std::uint64_t seed = 2026;
};

const std::vector<Preset>& PresetTable();
// nullptr when no preset has this name.
const Preset* FindPreset(const std::string& name);

struct Assertion {
  std::string name;
  double measured = 0.0;
  // "<=" or ">=".
  std::string comparison;
  double threshold = 0.0;
  bool passed = false;
};

struct PresetReport {
  std::string preset;
  std::uint64_t seed = 0;
  std::vector<Assertion> assertions;
  std::vector<std::pair<std::string, double>> diagnostics;
  double seconds = 0.0;

  bool passed() const;
  const Assertion& assertion(const std::string& name) const;
};

// The games a preset runs on, in run order.
std::vector<PayoffMatrix> PresetGames(const Preset& preset, std::uint64_t seed);

// Runs the preset; `seed` overrides the table seed.
PresetReport RunPreset(const Preset& preset,
                       std::optional<std::uint64_t> seed = std::nullopt);

// Report JSON: every assertion with measured value and threshold, then the
// diagnostics. Wall time is left out so reruns are byte-identical.
std::string PresetReportJson(const PresetReport& report);

}  // namespace lastround

#endif  // LASTROUND_PRESETS_H_
