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

// Command-line driver: single runs, small seeded sweeps, and named presets.
//
// Exit codes: 0 success (all assertions pass), 1 assertion failure or run
// error, 2 usage or configuration error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lastround/engine.h"
#include "lastround/presets.h"
#include "lastround/report.h"

namespace {

namespace fs = std::filesystem;
using namespace lastround;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

constexpr char kOutDirEnv[] = "LASTROUND_OUT_DIR";

constexpr char kFooter[] = R"(Seeds:
  All randomness flows from --seed. With --games K > 1, game g (0-based)
  is generated from DeriveSeed(seed, g) = splitmix64(seed + (g + 1) *
  0x9E3779B97F4A7C15); with K = 1 the game uses --seed directly. The
  random-mixed row reuses the run's game seed. Presets derive game g from
  DeriveSeed(seed, g) (matching pennies first when the preset includes it)
  and the run of row variant r on game g from DeriveSeed(seed, 1000 + 100 r + g).

Output:
  Files go to --out, else $LASTROUND_OUT_DIR, else the working directory.
  Runs write trajectory.csv and summary.json (trajectory_<g>.csv and
  summary_<g>.json for sweeps); presets write <preset>.json.

Exit codes: 0 pass, 1 assertion failure or run error, 2 usage error.)";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game = "random-uniform";
  std::string matrix;
  std::size_t rows = 5;
  std::size_t cols = 5;
  std::uint64_t seed = 0;
  std::string row_algo = "mwu";
  double mu = 0.1;
  std::string schedule = "constant";
  std::string col_algo = "lrca";
  std::string step_mode;
  std::int64_t rounds = 10000;
  int games = 1;
  std::string out;
  std::string preset;
  bool list_presets = false;
};

fs::path OutputDir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return fs::current_path();
}

void WriteFile(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

int RunPresetMode(const Options& o, const CLI::App& app) {
  for (const char* flag : {"--game", "--matrix", "--rows", "--cols", "--row-algo", "--mu",
                           "--schedule", "--col-algo", "--step-mode", "--rounds",
                           "--games"}) {
    if (app.count(flag) > 0) {
      throw UsageError(std::string("--preset fixes the experiment; ") + flag +
                       " cannot be combined with it (only --seed and --out)");
    }
  }
  const Preset* preset = FindPreset(o.preset);
  if (preset == nullptr) throw UsageError("unknown preset: " + o.preset);
  std::optional<std::uint64_t> seed;
  if (app.count("--seed") > 0) seed = o.seed;

  PresetReport report = RunPreset(*preset, seed);
  const fs::path dir = OutputDir(o);
  fs::create_directories(dir);
  const fs::path file = dir / (preset->name + ".json");
  WriteFile(file, PresetReportJson(report));

  for (const Assertion& a : report.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << " = "
              << FormatDouble(a.measured) << " (" << a.comparison << " "
              << FormatDouble(a.threshold) << ")\n";
  }
  std::cout << preset->name << ": " << (report.passed() ? "passed" : "FAILED")
            << " -> " << file.string() << "\n";
  return report.passed() ? kExitOk : kExitFailed;
}

StepSizeSchedule MakeSchedule(const Options& o) {
  if (o.schedule == "constant") return StepSizeSchedule::Constant(o.mu);
  if (o.schedule == "inverse-sqrt") return StepSizeSchedule::InverseSqrt();
  throw UsageError("unknown schedule: " + o.schedule + " (constant, inverse-sqrt)");
}

std::vector<RateFit> DefaultFits(const Trajectory& traj) {
  const int hi = static_cast<int>(std::floor(std::log2(static_cast<double>(traj.rounds))));
  std::vector<RateFit> fits;
  if (hi < 8) return fits;
  const std::vector<std::int64_t> cp = DyadicCheckpoints(4, hi);
  for (RateMetric m : {RateMetric::kInstantRegret, RateMetric::kFGap}) {
    try {
      fits.push_back(FitRate(traj, m, cp));
    } catch (const std::invalid_argument&) {
      // Too few positive checkpoints (e.g. play already at equilibrium).
    }
  }
  return fits;
}

int RunMode(const Options& o) {
  if (o.rounds < 1) throw UsageError("--rounds must be at least 1");
  if (!(o.mu >= 0.0) || !std::isfinite(o.mu)) throw UsageError("--mu must be >= 0");
  if (o.games < 1) throw UsageError("--games must be at least 1");

  GameSpec base;
  try {
    base.kind = o.matrix.empty() ? ParseGameKind(o.game) : GameKind::kFromFile;
    if (base.kind == GameKind::kFromFile && o.matrix.empty()) {
      throw UsageError("--game from-file needs --matrix FILE");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  base.rows = o.rows;
  base.cols = o.cols;
  base.path = o.matrix;

  LearnerConfig row;
  ColumnConfig column;
  try {
    row.algorithm = ParseLearnerAlgorithm(o.row_algo);
    row.schedule = MakeSchedule(o);
    column.policy = ParseColumnPolicy(o.col_algo);
    if (!o.step_mode.empty()) column.step_mode = ParseStepMode(o.step_mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  column.row_step_hint = row.schedule;
  column.column_mu = o.mu;

  std::vector<RunSpec> specs;
  for (int g = 0; g < o.games; ++g) {
    GameSpec spec = base;
    spec.seed = o.games == 1 ? o.seed : DeriveSeed(o.seed, static_cast<std::uint64_t>(g));
    PayoffMatrix game;
    try {
      game = GenerateGame(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    specs.push_back({std::move(game), row, column, o.rounds, spec.seed, std::nullopt});
  }
  std::vector<Trajectory> runs = RunBatch(specs);

  const fs::path dir = OutputDir(o);
  fs::create_directories(dir);
  for (std::size_t g = 0; g < runs.size(); ++g) {
    const std::string suffix = o.games == 1 ? "" : "_" + std::to_string(g);
    std::ostringstream csv;
    WriteTrajectoryCsv(runs[g], csv);
    WriteFile(dir / ("trajectory" + suffix + ".csv"), csv.str());
    WriteFile(dir / ("summary" + suffix + ".json"), SummaryJson(runs[g], DefaultFits(runs[g])));
    const RoundRecord& last = runs[g].records.back();
    std::cout << "game " << g << ": v = " << FormatDouble(runs[g].equilibrium.value)
              << ", f(x_T) - v = " << FormatDouble(last.f_gap) << "\n";
  }
  std::cout << "wrote " << runs.size() << " run(s) to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated zero-sum matrix games against an informed column player."};
  app.footer(kFooter);
  Options o;
  app.add_option("--game", o.game,
                 "random-uniform | random-interior | matching-pennies | derived-2x2 | "
                 "from-file")
      ->capture_default_str();
  app.add_option("--matrix", o.matrix, "CSV payoff matrix (implies --game from-file)");
  app.add_option("--rows", o.rows, "Row actions n")->capture_default_str();
  app.add_option("--cols", o.cols, "Column actions m")->capture_default_str();
  app.add_option("--seed", o.seed, "Base seed")->capture_default_str();
  app.add_option("--row-algo", o.row_algo,
                 "mwu | ftrl (alias omd) | lmwu | omwu | adahedge | random")
      ->capture_default_str();
  app.add_option("--mu", o.mu, "Constant row step size (also the mwu-column rate)")
      ->capture_default_str();
  app.add_option("--schedule", o.schedule, "constant | inverse-sqrt (sqrt(8 ln n / t))")
      ->capture_default_str();
  app.add_option("--col-algo", o.col_algo,
                 "lrca | lrca2 | lrca-adahedge | fixed-minimax | best-response-last | "
                 "mwu-column")
      ->capture_default_str();
  app.add_option("--step-mode", o.step_mode,
                 "robust | optimal-mwu | log-damped | relative-gap (policy default when "
                 "unset)");
  app.add_option("--rounds", o.rounds, "Horizon T")->capture_default_str();
  app.add_option("--games", o.games, "Number of seeded games (sweep)")->capture_default_str();
  app.add_option("--out", o.out, "Output directory (default $LASTROUND_OUT_DIR or .)");
  app.add_option("--preset", o.preset, "Run a named preset; see --list-presets");
  app.add_flag("--list-presets", o.list_presets, "Print the preset table and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (o.list_presets) {
      for (const Preset& p : PresetTable()) std::cout << p.name << "  " << p.summary << "\n";
      return kExitOk;
    }
    if (!o.preset.empty()) return RunPresetMode(o, app);
    return RunMode(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}
