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

#include "secgame/scenarios.h"

#include <fstream>

namespace secgame {

namespace {

// start - {n1, n2} - data diamond used by the built-in scenarios.
Topology DiamondTopology() {
  Topology t;
  t.node_count = 4;
  t.start_id = 0;
  t.data_id = 3;
  t.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return t;
}

ScenarioSpec MakeDiamondScenario(std::vector<std::vector<int>> defense_rows) {
  ScenarioSpec spec;
  spec.topology = DiamondTopology();
  spec.constants = {4, 9};
  spec.initial_defense = std::move(defense_rows);
  spec.initial_attack.assign(4, std::vector<int>(4, 0));
  ValidateScenario(spec);
  return spec;
}

}  // namespace

void ValidateScenario(const ScenarioSpec& spec) {
  ValidateTopology(spec.topology);
  const int n = spec.topology.node_count;
  const int m = spec.constants.attack_type_count;
  const int w = spec.constants.max_attribute_value;
  SECGAME_CHECK_MSG(m >= 1, "attack type count must be >= 1");
  SECGAME_CHECK_MSG(w >= 1, "maximum attribute value must be >= 1");
  SECGAME_CHECK_MSG(static_cast<int>(spec.initial_defense.size()) == n,
                    "defense matrix must have one row per node");
  SECGAME_CHECK_MSG(static_cast<int>(spec.initial_attack.size()) == n,
                    "attack matrix must have one row per node");
  for (NodeId node = 0; node < n; ++node) {
    const auto& defense_row = spec.initial_defense[node];
    SECGAME_CHECK_MSG(static_cast<int>(defense_row.size()) == m + 1,
                      "defense row " << node << " must have m+1 entries");
    for (int v : defense_row) {
      SECGAME_CHECK_MSG(v >= 0 && v <= w,
                        "defense value " << v << " outside [0, " << w << "]");
    }
    const auto& attack_row = spec.initial_attack[node];
    SECGAME_CHECK_MSG(static_cast<int>(attack_row.size()) == m,
                      "attack row " << node << " must have m entries");
    for (int v : attack_row) {
      SECGAME_CHECK_MSG(v == 0, "initial attack values must be zero");
    }
  }
  for (int v : spec.initial_defense[spec.topology.start_id]) {
    SECGAME_CHECK_MSG(v == 0, "start node defense row must be zero");
  }
}

ScenarioSpec BuildScenario(int id) {
  switch (id) {
    case 1:
      return MakeDiamondScenario({{0, 0, 0, 0, 0},
                                  {9, 1, 7, 8, 1},
                                  {9, 7, 1, 8, 1},
                                  {5, 9, 8, 1, 1}});
    case 2:
      return MakeDiamondScenario({{0, 0, 0, 0, 0},
                                  {1, 9, 9, 8, 1},
                                  {9, 9, 9, 8, 1},
                                  {9, 1, 5, 8, 1}});
    case 3:
      return MakeDiamondScenario({{0, 0, 0, 0, 0},
                                  {1, 1, 1, 1, 1},
                                  {1, 1, 1, 1, 1},
                                  {1, 1, 1, 1, 1}});
    default:
      throw ContractError("unknown scenario id " + std::to_string(id));
  }
}

ScenarioSpec PermuteDefenses(const ScenarioSpec& spec, Rng& rng) {
  ScenarioSpec out = spec;
  const int m = spec.constants.attack_type_count;
  for (NodeId node = 0; node < spec.topology.node_count; ++node) {
    if (node == spec.topology.start_id) continue;
    auto& row = out.initial_defense[node];
    // Fisher-Yates over the first m entries; detection column stays put.
    for (int i = m - 1; i > 0; --i) {
      std::swap(row[i], row[rng.UniformInt(i + 1)]);
    }
  }
  return out;
}

nlohmann::ordered_json ScenarioToJson(const ScenarioSpec& spec) {
  nlohmann::ordered_json j;
  j["topology"] = TopologyToJson(spec.topology);
  j["m"] = spec.constants.attack_type_count;
  j["w"] = spec.constants.max_attribute_value;
  j["defense_rows"] = spec.initial_defense;
  return j;
}

ScenarioSpec ScenarioFromJson(const nlohmann::json& j) {
  ScenarioSpec spec;
  spec.topology = TopologyFromJson(j.at("topology"));
  spec.constants.attack_type_count = j.at("m").get<int>();
  spec.constants.max_attribute_value = j.at("w").get<int>();
  spec.initial_defense = j.at("defense_rows").get<std::vector<std::vector<int>>>();
  spec.initial_attack.assign(
      spec.topology.node_count,
      std::vector<int>(spec.constants.attack_type_count, 0));
  ValidateScenario(spec);
  return spec;
}

ScenarioSpec LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  SECGAME_CHECK_MSG(in.good(), "cannot open scenario file " << path);
  nlohmann::json j;
  in >> j;
  return ScenarioFromJson(j);
}

ScenarioSpec ResolveScenario(const std::string& spec_string) {
  if (spec_string == "1" || spec_string == "2" || spec_string == "3") {
    return BuildScenario(spec_string[0] - '0');
  }
  return LoadScenarioFile(spec_string);
}

}  // namespace secgame
