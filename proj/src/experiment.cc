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

#include "secgame/experiment.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace secgame {

namespace fs = std::filesystem;

namespace {

std::string FormatDouble(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

void WriteTextFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  SECGAME_CHECK_MSG(out.good(), "cannot write " << path.string());
  out << content;
}

double ParseCsvDouble(const std::string& token) {
  return std::strtod(token.c_str(), nullptr);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> tokens;
  std::stringstream ss(line);
  std::string token;
  while (std::getline(ss, token, ',')) tokens.push_back(token);
  return tokens;
}

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;
};

MeanStd ComputeMeanStd(const std::vector<double>& values) {
  MeanStd out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(var / n);
  return out;
}

std::string XmlEscape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* const kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#ff7f0e", "#9467bd", "#8c564b"};

nlohmann::ordered_json AttackerActionToJson(const AttackerAction& action) {
  nlohmann::ordered_json j;
  if (action.kind == AttackerAction::Kind::kRecon) {
    j["kind"] = "recon";
    j["node"] = action.node;
  } else {
    j["kind"] = "attack";
    j["node"] = action.node;
    j["type"] = action.attack_type;
  }
  return j;
}

nlohmann::ordered_json DefenderActionToJson(const DefenderAction& action) {
  nlohmann::ordered_json j;
  if (action.kind == DefenderAction::Kind::kMonitor) {
    j["kind"] = "monitor";
    j["node"] = action.node;
  } else {
    j["kind"] = "defend";
    j["node"] = action.node;
    j["type"] = action.defense_type;
  }
  return j;
}

AttackerAction AttackerActionFromJson(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "recon") return AttackerAction::Recon(j.at("node").get<int>());
  SECGAME_CHECK_MSG(kind == "attack", "bad attacker action kind " << kind);
  return AttackerAction::Attack(j.at("node").get<int>(),
                                j.at("type").get<int>());
}

DefenderAction DefenderActionFromJson(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "monitor") return DefenderAction::Monitor(j.at("node").get<int>());
  SECGAME_CHECK_MSG(kind == "defend", "bad defender action kind " << kind);
  return DefenderAction::Defend(j.at("node").get<int>(),
                                j.at("type").get<int>());
}

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j) {
  ExperimentConfig config;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "scenario") {
        config.scenario = value.is_number_integer()
                              ? std::to_string(value.get<int>())
                              : value.get<std::string>();
      } else if (key == "algo") {
        if (value.is_string()) {
          config.attacker_algo = config.defender_algo =
              AlgoFromName(value.get<std::string>());
        } else {
          if (value.contains("attacker")) {
            config.attacker_algo =
                AlgoFromName(value.at("attacker").get<std::string>());
          }
          if (value.contains("defender")) {
            config.defender_algo =
                AlgoFromName(value.at("defender").get<std::string>());
          }
        }
      } else if (key == "static_role") {
        config.static_role = StaticRoleFromName(value.get<std::string>());
      } else if (key == "static_policy") {
        config.static_policy = value.get<std::string>();
      } else if (key == "iterations") {
        config.iterations = value.get<int>();
      } else if (key == "seeds") {
        config.seeds = value.get<std::vector<std::uint64_t>>();
      } else if (key == "eval_games") {
        config.eval_games = value.get<int>();
      } else if (key == "permute") {
        config.permute = PermuteModeFromName(value.get<std::string>());
      } else if (key == "eval_on_permuted") {
        config.eval_on_permuted = value.get<bool>();
      } else if (key == "out_dir") {
        config.out_dir = value.get<std::string>();
      } else if (key == "parallelism") {
        config.parallelism = value.get<int>();
      } else if (key == "checkpoint_interval") {
        config.checkpoint_interval = value.get<int>();
      } else if (key == "write_checkpoints") {
        config.write_checkpoints = value.get<bool>();
      } else if (key == "record_wallclock") {
        config.record_wallclock = value.get<bool>();
      } else if (key == "hyperparams") {
        config.hp = HyperparamsFromJson(value);
      } else {
        throw ConfigError(key, "unknown field");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
  }

  if (config.iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (config.eval_games < 1) throw ConfigError("eval_games", "must be >= 1");
  if (config.parallelism < 1) throw ConfigError("parallelism", "must be >= 1");
  if (config.seeds.empty()) throw ConfigError("seeds", "must be non-empty");
  std::set<std::uint64_t> distinct(config.seeds.begin(), config.seeds.end());
  if (distinct.size() != config.seeds.size()) {
    throw ConfigError("seeds", "must be distinct");
  }
  try {
    ValidateHyperparams(config.hp);
  } catch (const std::exception& e) {
    throw ConfigError("hyperparams", e.what());
  }
  return config;
}

nlohmann::ordered_json ExperimentConfigToJson(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["scenario"] = config.scenario;
  j["algo"] = {{"attacker", AlgoName(config.attacker_algo)},
               {"defender", AlgoName(config.defender_algo)}};
  j["static_role"] = StaticRoleName(config.static_role);
  j["static_policy"] = config.static_policy;
  j["iterations"] = config.iterations;
  j["seeds"] = config.seeds;
  j["eval_games"] = config.eval_games;
  j["permute"] = PermuteModeName(config.permute);
  j["eval_on_permuted"] = config.eval_on_permuted;
  j["out_dir"] = config.out_dir;
  j["parallelism"] = config.parallelism;
  j["checkpoint_interval"] = config.checkpoint_interval;
  j["write_checkpoints"] = config.write_checkpoints;
  j["record_wallclock"] = config.record_wallclock;
  j["hyperparams"] = HyperparamsToJson(config.hp);
  return j;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  SECGAME_CHECK_MSG(in.good(), "cannot open config file " << path);
  nlohmann::json j;
  in >> j;
  return ExperimentConfigFromJson(j);
}

const char kCurveCsvHeader[] =
    "iteration,attacker_win_ratio,defender_win_ratio,draw_ratio,"
    "mean_episode_len,attacker_policy_loss,attacker_value_loss,"
    "attacker_entropy,defender_policy_loss,defender_value_loss,"
    "defender_entropy,wallclock_s";

std::string RowToCsv(const TrainingRow& row) {
  std::string line = std::to_string(row.iteration);
  line += "," + FormatDouble("%.6f", row.attacker_win_ratio);
  line += "," + FormatDouble("%.6f", row.defender_win_ratio);
  line += "," + FormatDouble("%.6f", row.draw_ratio);
  line += "," + FormatDouble("%.4f", row.mean_episode_len);
  line += "," + FormatDouble("%.9g", row.attacker_policy_loss);
  line += "," + FormatDouble("%.9g", row.attacker_value_loss);
  line += "," + FormatDouble("%.9g", row.attacker_entropy);
  line += "," + FormatDouble("%.9g", row.defender_policy_loss);
  line += "," + FormatDouble("%.9g", row.defender_value_loss);
  line += "," + FormatDouble("%.9g", row.defender_entropy);
  line += "," + FormatDouble("%.3f", row.wallclock_s);
  line += "\n";
  return line;
}

std::string CurveToCsv(const TrainingCurve& curve) {
  std::string csv = kCurveCsvHeader;
  csv += "\n";
  for (const TrainingRow& row : curve) csv += RowToCsv(row);
  return csv;
}

TrainingCurve CurveFromCsv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  SECGAME_CHECK_MSG(std::getline(in, line), "empty CSV");
  SECGAME_CHECK_MSG(line == kCurveCsvHeader, "unexpected CSV header: " << line);
  TrainingCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> tokens = SplitCsvLine(line);
    SECGAME_CHECK_MSG(tokens.size() == 12, "CSV row with wrong column count");
    TrainingRow row;
    row.iteration = std::stoi(tokens[0]);
    row.attacker_win_ratio = ParseCsvDouble(tokens[1]);
    row.defender_win_ratio = ParseCsvDouble(tokens[2]);
    row.draw_ratio = ParseCsvDouble(tokens[3]);
    row.mean_episode_len = ParseCsvDouble(tokens[4]);
    row.attacker_policy_loss = ParseCsvDouble(tokens[5]);
    row.attacker_value_loss = ParseCsvDouble(tokens[6]);
    row.attacker_entropy = ParseCsvDouble(tokens[7]);
    row.defender_policy_loss = ParseCsvDouble(tokens[8]);
    row.defender_value_loss = ParseCsvDouble(tokens[9]);
    row.defender_entropy = ParseCsvDouble(tokens[10]);
    row.wallclock_s = ParseCsvDouble(tokens[11]);
    curve.push_back(row);
  }
  return curve;
}

TrainingCurve LoadCurveCsv(const std::string& path) {
  std::ifstream in(path);
  SECGAME_CHECK_MSG(in.good(), "cannot open CSV " << path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return CurveFromCsv(buffer.str());
}

nlohmann::ordered_json BuildSummary(const std::vector<std::uint64_t>& seeds,
                                    const std::vector<TrainingCurve>& curves) {
  SECGAME_CHECK_MSG(!curves.empty(), "no curves to summarize");
  const std::size_t iterations = curves[0].size();
  for (const TrainingCurve& curve : curves) {
    SECGAME_CHECK_MSG(curve.size() == iterations,
                      "curves have different lengths");
  }
  nlohmann::ordered_json summary;
  summary["seeds"] = seeds;
  summary["iterations"] = iterations;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < iterations; ++i) {
    nlohmann::ordered_json row;
    row["iteration"] = curves[0][i].iteration;
    const auto add = [&](const char* name, auto getter) {
      std::vector<double> values;
      values.reserve(curves.size());
      for (const TrainingCurve& curve : curves) values.push_back(getter(curve[i]));
      const MeanStd stats = ComputeMeanStd(values);
      row[name] = {{"mean", stats.mean}, {"std", stats.std_dev}};
    };
    add("attacker_win_ratio",
        [](const TrainingRow& r) { return r.attacker_win_ratio; });
    add("defender_win_ratio",
        [](const TrainingRow& r) { return r.defender_win_ratio; });
    add("draw_ratio", [](const TrainingRow& r) { return r.draw_ratio; });
    add("mean_episode_len",
        [](const TrainingRow& r) { return r.mean_episode_len; });
    rows.push_back(row);
  }
  summary["rows"] = rows;
  return summary;
}

std::string RenderCurveSvg(const std::vector<SvgSeries>& series,
                           const std::string& title,
                           const std::string& y_label) {
  const double width = 800, height = 500;
  const double left = 70, right = 30, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t points = 0;
  for (const SvgSeries& s : series) points = std::max(points, s.mean.size());
  const double x_max = points > 1 ? static_cast<double>(points) : 1.0;

  const auto x_of = [&](double i) { return left + (i + 1.0) / x_max * plot_w; };
  const auto y_of = [&](double v) {
    const double clamped = std::min(1.0, std::max(0.0, v));
    return top + (1.0 - clamped) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"25\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << XmlEscape(title)
      << "</text>\n";

  // Axes.
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << left + plot_w << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    const double y = y_of(v);
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << FormatDouble("%.2f", v) << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t) {
    const double i = x_max * t / 5.0;
    const double x = left + i / x_max * plot_w;
    svg << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << static_cast<long>(i) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">iteration</text>\n"
      << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << top + plot_h / 2
      << ")\">" << XmlEscape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const SvgSeries& sr = series[s];
    const char* color = kSeriesColors[s % 6];
    const bool has_band =
        sr.std_dev.size() == sr.mean.size() && !sr.std_dev.empty();
    if (has_band) {
      std::ostringstream band;
      for (std::size_t i = 0; i < sr.mean.size(); ++i) {
        band << x_of(static_cast<double>(i)) << ","
             << y_of(sr.mean[i] + sr.std_dev[i]) << " ";
      }
      for (std::size_t i = sr.mean.size(); i-- > 0;) {
        band << x_of(static_cast<double>(i)) << ","
             << y_of(sr.mean[i] - sr.std_dev[i]) << " ";
      }
      svg << "<polygon points=\"" << band.str() << "\" fill=\"" << color
          << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }
    std::ostringstream line;
    for (std::size_t i = 0; i < sr.mean.size(); ++i) {
      line << x_of(static_cast<double>(i)) << "," << y_of(sr.mean[i]) << " ";
    }
    svg << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << left + plot_w - 130 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + plot_w - 124 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << XmlEscape(sr.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<TrainingCurve> RunExperiment(const ExperimentConfig& config) {
  const ScenarioSpec scenario = ResolveScenario(config.scenario);
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);
  WriteTextFile(out_dir / "config.json",
                ExperimentConfigToJson(config).dump(2) + "\n");

  const std::size_t seed_count = config.seeds.size();
  std::vector<TrainingCurve> curves(seed_count);
  std::vector<std::exception_ptr> errors(seed_count);

  const auto run_seed = [&](std::size_t index) {
    try {
      const std::uint64_t seed = config.seeds[index];
      const fs::path seed_dir =
          out_dir / ("seed-" + std::to_string(seed));
      fs::create_directories(seed_dir);
      RunConfig run;
      run.scenario = scenario;
      run.attacker_algo = config.attacker_algo;
      run.defender_algo = config.defender_algo;
      run.static_role = config.static_role;
      run.static_policy_spec = config.static_policy;
      run.iterations = config.iterations;
      run.seed = seed;
      run.hp = config.hp;
      run.eval_games = config.eval_games;
      run.permute = config.permute;
      run.eval_on_permuted = config.eval_on_permuted;
      run.checkpoint_interval = config.checkpoint_interval;
      run.checkpoint_dir =
          config.write_checkpoints ? seed_dir.string() : std::string();
      run.record_wallclock = config.record_wallclock;
      // Stream rows to disk as the run progresses.
      std::ofstream csv(seed_dir / "curve.csv");
      SECGAME_CHECK_MSG(csv.good(), "cannot write curve.csv under "
                                        << seed_dir.string());
      csv << kCurveCsvHeader << "\n" << std::flush;
      run.on_row = [&csv](const TrainingRow& row) {
        csv << RowToCsv(row) << std::flush;
      };
      curves[index] = config.static_role == StaticRole::kNone
                          ? TrainSelfplay(run)
                          : TrainVsStatic(run);
    } catch (...) {
      errors[index] = std::current_exception();
    }
  };

  const int workers =
      std::min<int>(config.parallelism, static_cast<int>(seed_count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < seed_count; ++i) run_seed(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        while (true) {
          const std::size_t index = next.fetch_add(1);
          if (index >= seed_count) break;
          run_seed(index);
        }
      });
    }
    for (std::thread& thread : threads) thread.join();
  }

  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < seed_count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      manifest.push_back(
          {{"seed", config.seeds[i]}, {"error", std::string(e.what())}});
    }
  }
  if (!manifest.empty()) {
    WriteTextFile(out_dir / "error_manifest.json", manifest.dump(2) + "\n");
    throw ContractError("experiment failed for " +
                        std::to_string(manifest.size()) +
                        " seed(s); see error_manifest.json");
  }

  WriteTextFile(out_dir / "summary.json",
                BuildSummary(config.seeds, curves).dump(2) + "\n");

  SvgSeries series;
  series.name = "attacker win ratio";
  for (std::size_t i = 0; i < curves[0].size(); ++i) {
    std::vector<double> values;
    values.reserve(seed_count);
    for (const TrainingCurve& curve : curves) {
      values.push_back(curve[i].attacker_win_ratio);
    }
    const MeanStd stats = ComputeMeanStd(values);
    series.mean.push_back(stats.mean);
    series.std_dev.push_back(stats.std_dev);
  }
  WriteTextFile(out_dir / "attacker_win_ratio.svg",
                RenderCurveSvg({series}, "Attacker win ratio vs iteration",
                               "attacker win ratio"));
  return curves;
}

SimulateResult Simulate(const ScenarioSpec& scenario, const Policy& attacker,
                        const Policy& defender, std::uint64_t seed,
                        int max_rounds) {
  Rng env_rng(MixSeed(seed, rng_stream::kEnvironment));
  Rng attacker_rng(MixSeed(seed, rng_stream::kAttackerPolicy));
  Rng defender_rng(MixSeed(seed, rng_stream::kDefenderPolicy));

  GameState state = NewGame(scenario, max_rounds);
  SimulateResult result;
  result.trace["version"] = 1;
  result.trace["scenario"] = ScenarioToJson(scenario);
  result.trace["seed"] = seed;
  result.trace["max_rounds"] = max_rounds;
  result.trace["initial_state"] = GameStateToJson(state);
  auto steps = nlohmann::ordered_json::array();

  std::ostringstream transcript;
  while (!state.IsTerminal()) {
    const Decision defend_decision = defender.Act(state, defender_rng);
    const Decision attack_decision = attacker.Act(state, attacker_rng);
    const DefenderAction defend =
        DecodeDefenderAction(defend_decision.flat_action, state.constants);
    const AttackerAction attack =
        DecodeAttackerAction(attack_decision.flat_action, state.constants);
    const StepResult step = Step(state, defend, attack, env_rng);

    transcript << "round " << step.next_state.round << " | "
               << ToString(defend) << " | " << ToString(attack) << " | "
               << "detected: " << (step.detected ? "yes" : "no")
               << " | newly compromised: ";
    if (step.compromised_nodes.empty()) {
      transcript << "-";
    } else {
      for (std::size_t i = 0; i < step.compromised_nodes.size(); ++i) {
        transcript << (i > 0 ? "," : "") << step.compromised_nodes[i];
      }
    }
    transcript << " | status: " << GameStatusName(step.next_state.status)
               << "\n";

    nlohmann::ordered_json step_json;
    step_json["round"] = step.next_state.round;
    step_json["defender"] = DefenderActionToJson(defend);
    step_json["attacker"] = AttackerActionToJson(attack);
    step_json["detected"] = step.detected;
    step_json["compromised_nodes"] = step.compromised_nodes;
    step_json["state"] = GameStateToJson(step.next_state);
    steps.push_back(std::move(step_json));

    state = step.next_state;
  }
  transcript << "outcome: " << GameStatusName(state.status) << " after "
             << state.round << " round(s)\n";
  result.trace["steps"] = steps;
  result.trace["outcome"] = GameStatusName(state.status);
  result.transcript = transcript.str();
  result.outcome = state.status;
  return result;
}

void ReplayTrace(const nlohmann::json& trace) {
  const std::uint64_t seed = trace.at("seed").get<std::uint64_t>();
  Rng env_rng(MixSeed(seed, rng_stream::kEnvironment));
  GameState state = GameStateFromJson(trace.at("initial_state"));
  for (const auto& step_json : trace.at("steps")) {
    const StepResult step =
        Step(state, DefenderActionFromJson(step_json.at("defender")),
             AttackerActionFromJson(step_json.at("attacker")), env_rng);
    // Canonicalize the recorded state before hashing so key order in the
    // parsed trace cannot matter.
    const std::uint64_t expected =
        GameStateHash(GameStateFromJson(step_json.at("state")));
    const std::uint64_t actual = GameStateHash(step.next_state);
    SECGAME_CHECK_MSG(expected == actual,
                      "replay diverged at round "
                          << step_json.at("round").get<int>());
    SECGAME_CHECK_MSG(step.detected == step_json.at("detected").get<bool>(),
                      "replay detection flag diverged");
    state = step.next_state;
  }
  SECGAME_CHECK_MSG(
      GameStatusName(state.status) == trace.at("outcome").get<std::string>(),
      "replay outcome diverged");
}

}  // namespace secgame
