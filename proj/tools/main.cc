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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "secgame/experiment.h"

namespace {

using namespace secgame;

std::vector<std::uint64_t> ParseSeeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) seeds.push_back(std::stoull(token));
  }
  SECGAME_CHECK_MSG(!seeds.empty(), "no seeds given");
  return seeds;
}

std::string DefaultOutDir() {
  const char* env = std::getenv("SECGAME_OUT_DIR");
  return env != nullptr ? env : "results";
}

struct TrainFlags {
  std::string config_path;
  std::string scenario;
  std::string algo;
  std::string static_role;
  std::string static_policy;
  int iterations = 0;
  std::string seeds;
  std::string out_dir;
  int max_rounds = 0;
  std::string permute;
  int parallelism = 0;
};

void AddTrainFlags(CLI::App* cmd, TrainFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON experiment config");
  cmd->add_option("--scenario", flags.scenario,
                  "scenario: 1, 2, 3 or a scenario JSON file");
  cmd->add_option("--algo", flags.algo, "reinforce, ppo or ppo-ar");
  cmd->add_option("--iterations", flags.iterations, "training iterations");
  cmd->add_option("--seeds", flags.seeds, "comma-separated seed list");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--max-rounds", flags.max_rounds, "episode round cap");
  cmd->add_option("--permute", flags.permute,
                  "defense permutation: run, episode or off");
  cmd->add_option("--parallelism", flags.parallelism,
                  "seeds trained in parallel");
}

ExperimentConfig BuildConfig(const TrainFlags& flags, bool selfplay) {
  ExperimentConfig config;
  if (!flags.config_path.empty()) {
    config = LoadExperimentConfig(flags.config_path);
  } else {
    config.out_dir = DefaultOutDir();
  }
  if (!flags.scenario.empty()) config.scenario = flags.scenario;
  if (!flags.algo.empty()) {
    config.attacker_algo = config.defender_algo = AlgoFromName(flags.algo);
  }
  if (!flags.static_role.empty()) {
    config.static_role = StaticRoleFromName(flags.static_role);
  }
  if (!flags.static_policy.empty()) config.static_policy = flags.static_policy;
  if (flags.iterations > 0) config.iterations = flags.iterations;
  if (!flags.seeds.empty()) config.seeds = ParseSeeds(flags.seeds);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.max_rounds > 0) config.hp.max_rounds = flags.max_rounds;
  if (!flags.permute.empty()) {
    config.permute = PermuteModeFromName(flags.permute);
  }
  if (flags.parallelism > 0) config.parallelism = flags.parallelism;
  // `selfplay` always trains both agents; `train` honors the configured
  // static role (default: static defender) and runs self-play when the user
  // explicitly asks for --static-role none.
  if (selfplay) config.static_role = StaticRole::kNone;
  return config;
}

int CmdEval(const std::string& scenario, const std::string& attacker_spec,
            const std::string& defender_spec, int games, std::uint64_t seed,
            int max_rounds) {
  const ScenarioSpec spec = ResolveScenario(scenario);
  const auto attacker = MakePolicyFromSpec(attacker_spec, Role::kAttacker);
  const auto defender = MakePolicyFromSpec(defender_spec, Role::kDefender);
  const EvalResult result =
      Evaluate(*attacker, *defender, spec, games, seed, max_rounds);
  std::cout << "attacker: " << attacker->kind()
            << "  defender: " << defender->kind() << "  games: " << games
            << "\n";
  std::cout << "outcome        count  ratio\n";
  const auto line = [&](const char* name, int count) {
    std::printf("%-14s %5d  %.3f\n", name, count,
                static_cast<double>(count) / games);
  };
  line("attacker_wins", result.attacker_wins);
  line("defender_wins", result.defender_wins);
  line("draws", result.draws);
  std::printf("mean episode length: %.2f\n", result.mean_length);
  return 0;
}

int CmdSimulate(const std::string& scenario, const std::string& attacker_spec,
                const std::string& defender_spec, std::uint64_t seed,
                int max_rounds, const std::string& trace_path) {
  const ScenarioSpec spec = ResolveScenario(scenario);
  const auto attacker = MakePolicyFromSpec(attacker_spec, Role::kAttacker);
  const auto defender = MakePolicyFromSpec(defender_spec, Role::kDefender);
  const SimulateResult result =
      Simulate(spec, *attacker, *defender, seed, max_rounds);
  std::cout << result.transcript;
  if (trace_path.empty()) {
    std::cout << result.trace.dump(2) << "\n";
  } else {
    std::ofstream out(trace_path);
    SECGAME_CHECK_MSG(out.good(), "cannot write trace " << trace_path);
    out << result.trace.dump(2) << "\n";
    std::cout << "trace written to " << trace_path << "\n";
  }
  return 0;
}

int CmdScenarioInspect(const std::string& scenario) {
  const ScenarioSpec spec = ResolveScenario(scenario);
  const Topology& t = spec.topology;
  std::cout << "nodes: " << t.node_count
            << "  m: " << spec.constants.attack_type_count
            << "  w: " << spec.constants.max_attribute_value << "\n";
  std::cout << "start: " << t.start_id << "  data: " << t.data_id
            << "  edges:";
  for (const auto& [a, b] : t.edges) std::cout << " " << a << "-" << b;
  std::cout << "\n";
  for (NodeId n = 0; n < t.node_count; ++n) {
    std::cout << "node " << n;
    if (n == t.start_id) std::cout << " (start)";
    if (n == t.data_id) std::cout << " (data)";
    std::cout << ": defense [";
    const auto& row = spec.initial_defense[n];
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::cout << (j > 0 ? "," : "") << row[j];
    }
    std::cout << "]\n";
  }
  return 0;
}

int CmdPlot(const std::vector<std::string>& csv_paths,
            const std::string& out_path) {
  std::vector<SvgSeries> series;
  for (const std::string& path : csv_paths) {
    const TrainingCurve curve = LoadCurveCsv(path);
    SvgSeries s;
    s.name = std::filesystem::path(path).stem().string();
    for (const TrainingRow& row : curve) s.mean.push_back(row.attacker_win_ratio);
    series.push_back(std::move(s));
  }
  std::ofstream out(out_path);
  SECGAME_CHECK_MSG(out.good(), "cannot write SVG " << out_path);
  out << RenderCurveSvg(series, "Attacker win ratio vs iteration",
                        "attacker win ratio");
  std::cout << "plot written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrusion-prevention Markov game: self-play RL trainer"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  CLI::App* train = app.add_subcommand(
      "train", "train one agent against a static heuristic opponent");
  AddTrainFlags(train, train_flags);
  train->add_option("--static-role", train_flags.static_role,
                    "which side stays fixed: attacker or defender");
  train->add_option("--static-policy", train_flags.static_policy,
                    "static policy spec (default heuristic per role)");

  TrainFlags selfplay_flags;
  CLI::App* selfplay = app.add_subcommand(
      "selfplay", "train both agents simultaneously with an opponent pool");
  AddTrainFlags(selfplay, selfplay_flags);

  std::string eval_scenario = "3", eval_attacker = "attack-maximal",
              eval_defender = "defend-minimal";
  int eval_games = 100, eval_max_rounds = 100;
  std::uint64_t eval_seed = 1;
  CLI::App* eval = app.add_subcommand(
      "eval", "play evaluation games between two policies");
  eval->add_option("--scenario", eval_scenario, "scenario id or file");
  eval->add_option("--attacker", eval_attacker,
                   "attacker policy: heuristic name, random or checkpoint");
  eval->add_option("--defender", eval_defender, "defender policy spec");
  eval->add_option("--games", eval_games, "number of games");
  eval->add_option("--seed", eval_seed, "evaluation seed");
  eval->add_option("--max-rounds", eval_max_rounds, "episode round cap");

  std::string sim_scenario = "3", sim_attacker = "attack-maximal",
              sim_defender = "defend-minimal", sim_trace;
  int sim_max_rounds = 100;
  std::uint64_t sim_seed = 1;
  CLI::App* simulate =
      app.add_subcommand("simulate", "print one game round by round");
  simulate->add_option("--scenario", sim_scenario, "scenario id or file");
  simulate->add_option("--attacker", sim_attacker, "attacker policy spec");
  simulate->add_option("--defender", sim_defender, "defender policy spec");
  simulate->add_option("--seed", sim_seed, "game seed");
  simulate->add_option("--max-rounds", sim_max_rounds, "episode round cap");
  simulate->add_option("--trace", sim_trace,
                       "write the JSON state trace to this file");

  std::string inspect_scenario = "1";
  CLI::App* inspect = app.add_subcommand(
      "scenario-inspect", "print a scenario's matrices and topology");
  inspect->add_option("scenario", inspect_scenario, "scenario id or file");

  std::vector<std::string> plot_csvs;
  std::string plot_out = "plot.svg";
  CLI::App* plot =
      app.add_subcommand("plot", "regenerate an SVG plot from curve CSVs");
  plot->add_option("--csv", plot_csvs, "curve CSV files")->required();
  plot->add_option("--out", plot_out, "output SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      RunExperiment(BuildConfig(train_flags, /*selfplay=*/false));
      return 0;
    }
    if (selfplay->parsed()) {
      RunExperiment(BuildConfig(selfplay_flags, /*selfplay=*/true));
      return 0;
    }
    if (eval->parsed()) {
      return CmdEval(eval_scenario, eval_attacker, eval_defender, eval_games,
                     eval_seed, eval_max_rounds);
    }
    if (simulate->parsed()) {
      return CmdSimulate(sim_scenario, sim_attacker, sim_defender, sim_seed,
                         sim_max_rounds, sim_trace);
    }
    if (inspect->parsed()) {
      return CmdScenarioInspect(inspect_scenario);
    }
    if (plot->parsed()) {
      return CmdPlot(plot_csvs, plot_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
