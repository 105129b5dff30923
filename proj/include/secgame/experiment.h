// Copyright 2026 The secgame Authors
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
//
// Experiment orchestration across seeds plus result persistence: CSV
// training curves, an aggregate summary, self-contained SVG plots, and the
// round-by-round simulate transcript with a replayable JSON trace.

#ifndef SECGAME_EXPERIMENT_H_
#define SECGAME_EXPERIMENT_H_

#include <string>
#include <vector>

#include "secgame/trainer.h"

namespace secgame {

// Invalid configuration with the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error("config field '" + field + "': " + message),
        field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string scenario = "3";  // "1" | "2" | "3" | scenario file path
  Algo attacker_algo = Algo::kPpoAr;
  Algo defender_algo = Algo::kPpoAr;
  StaticRole static_role = StaticRole::kDefender;
  std::string static_policy;  // optional override of the default heuristic
  int iterations = 500;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  int eval_games = 100;
  PermuteMode permute = PermuteMode::kRun;
  bool eval_on_permuted = false;
  std::string out_dir = "results";
  int parallelism = 1;
  int checkpoint_interval = 0;
  bool write_checkpoints = true;
  bool record_wallclock = true;
  Hyperparams hp;
};

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json ExperimentConfigToJson(const ExperimentConfig& config);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Fixed, versioned CSV schema for training curves.
extern const char kCurveCsvHeader[];
std::string RowToCsv(const TrainingRow& row);
std::string CurveToCsv(const TrainingCurve& curve);
TrainingCurve CurveFromCsv(const std::string& csv_text);
TrainingCurve LoadCurveCsv(const std::string& path);

// Per-iteration mean and population standard deviation across seeds.
nlohmann::ordered_json BuildSummary(const std::vector<std::uint64_t>& seeds,
                                    const std::vector<TrainingCurve>& curves);

struct SvgSeries {
  std::string name;
  std::vector<double> mean;
  std::vector<double> std_dev;  // empty or zero for no band
};

// Self-contained SVG: one shaded +/- std band polygon and exactly one
// polyline per series, axes and a legend.
std::string RenderCurveSvg(const std::vector<SvgSeries>& series,
                           const std::string& title,
                           const std::string& y_label);

// Runs every seed (parallel up to config.parallelism), writing
// out_dir/config.json, out_dir/seed-S/curve.csv, checkpoints,
// out_dir/summary.json and out_dir/attacker_win_ratio.svg.
// A failing seed produces out_dir/error_manifest.json before rethrowing.
std::vector<TrainingCurve> RunExperiment(const ExperimentConfig& config);

struct SimulateResult {
  std::string transcript;
  nlohmann::ordered_json trace;
  GameStatus outcome = GameStatus::kOngoing;
};

// Plays one game, rendering a one-line-per-round transcript and a canonical
// JSON state trace that replays bit-exactly through the game engine.
SimulateResult Simulate(const ScenarioSpec& scenario, const Policy& attacker,
                        const Policy& defender, std::uint64_t seed,
                        int max_rounds);

// Re-applies the trace's action sequence with the recorded seed and checks
// every intermediate state hash. Throws on any divergence.
void ReplayTrace(const nlohmann::json& trace);

}  // namespace secgame

#endif  // SECGAME_EXPERIMENT_H_
