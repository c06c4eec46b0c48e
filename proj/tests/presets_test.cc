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

#include <set>

#include "gtest/gtest.h"

namespace lastround {
namespace {

std::vector<double> Entries(const PayoffMatrix& a) {
  return {a.entries().begin(), a.entries().end()};
}

TEST(PresetTableTest, NamesAreUniqueAndFindable) {
  std::set<std::string> names;
  for (const Preset& p : PresetTable()) {
    EXPECT_TRUE(names.insert(p.name).second) << p.name;
    EXPECT_EQ(FindPreset(p.name), &p);
    EXPECT_FALSE(p.row_variants.empty());
  }
  for (const char* n : {"lemma1-check", "lrca-complexity", "ftrl-lyapunov", "lmwu-lyapunov",
                        "lrca2-omwu", "instant-regret-rates", "adahedge-switch",
                        "mwu-divergence", "ftrl-stability"}) {
    EXPECT_NE(FindPreset(n), nullptr) << n;
  }
  EXPECT_EQ(FindPreset("nope"), nullptr);
}

TEST(PresetTableTest, GamesFollowSeed) {
  const Preset& p = *FindPreset("lrca2-omwu");
  std::vector<PayoffMatrix> a = PresetGames(p, 5), b = PresetGames(p, 5);
  ASSERT_EQ(a.size(), 21u);
  EXPECT_EQ(Entries(a[0]), (std::vector<double>{1, 0, 0, 1}));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(Entries(a[i]), Entries(b[i]));
  EXPECT_NE(Entries(PresetGames(p, 6)[1]), Entries(a[1]));
}

TEST(RunPresetTest, DecreaseCheckPassesAndReportIsStable) {
  PresetReport r = RunPreset(*FindPreset("lemma1-check"));
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.assertion("min_lyapunov_residual").measured, -1e-9);
  EXPECT_EQ(PresetReportJson(r), PresetReportJson(RunPreset(*FindPreset("lemma1-check"))));
}

TEST(RunPresetTest, StabilityPasses) {
  PresetReport r = RunPreset(*FindPreset("ftrl-stability"), 11);
  EXPECT_EQ(r.seed, 11u);
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(r.assertion("missing"), std::out_of_range);
}

}  // namespace
}  // namespace lastround
