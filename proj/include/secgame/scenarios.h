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

#ifndef SECGAME_SCENARIOS_H_
#define SECGAME_SCENARIOS_H_

#include <string>

#include "json.hpp"
#include "secgame/game.h"

namespace secgame {

// Initial conditions of one game instance: graph, game constants and the
// starting attribute matrices. initial_attack is all zeros by construction.
struct ScenarioSpec {
  Topology topology;
  GameConstants constants;
  std::vector<std::vector<int>> initial_defense;  // [node][m+1]
  std::vector<std::vector<int>> initial_attack;   // [node][m], all zeros

  bool operator==(const ScenarioSpec&) const = default;
};

// Throws ContractError on shape/range violations.
void ValidateScenario(const ScenarioSpec& spec);

// The three built-in 4-node diamond scenarios (start - {n1, n2} - data),
// m = 4, w = 9. Scenarios 1 and 2 have strong defenses with weak detection;
// scenario 3 is weak everywhere.
ScenarioSpec BuildScenario(int id);

// Independently permutes the first m defense values of every defender-owned
// node; the detection attribute and the start row are untouched.
ScenarioSpec PermuteDefenses(const ScenarioSpec& spec, Rng& rng);

// JSON scenario files: {topology, m, w, defense_rows}.
ScenarioSpec ScenarioFromJson(const nlohmann::json& j);
nlohmann::ordered_json ScenarioToJson(const ScenarioSpec& spec);
ScenarioSpec LoadScenarioFile(const std::string& path);

// "1" | "2" | "3" | path to a scenario JSON file.
ScenarioSpec ResolveScenario(const std::string& spec_string);

}  // namespace secgame

#endif  // SECGAME_SCENARIOS_H_
