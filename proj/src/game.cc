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

#include "secgame/game.h"

#include <algorithm>
#include <queue>
#include <sstream>

#include "secgame/scenarios.h"

namespace secgame {

std::pair<NodeId, NodeId> NormalizedEdge(NodeId a, NodeId b) {
  return {std::min(a, b), std::max(a, b)};
}

bool Topology::HasEdge(NodeId a, NodeId b) const {
  return edges.count(NormalizedEdge(a, b)) > 0;
}

std::vector<NodeId> Topology::Neighbors(NodeId node) const {
  std::vector<NodeId> out;
  for (const auto& [a, b] : edges) {
    if (a == node) out.push_back(b);
    if (b == node) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ValidateTopology(const Topology& topology) {
  SECGAME_CHECK_MSG(topology.node_count > 0, "topology needs at least one node");
  auto valid = [&](NodeId n) { return n >= 0 && n < topology.node_count; };
  SECGAME_CHECK_MSG(valid(topology.start_id), "start_id out of range");
  SECGAME_CHECK_MSG(valid(topology.data_id), "data_id out of range");
  SECGAME_CHECK_MSG(topology.start_id != topology.data_id,
                    "start and data nodes must differ");
  for (const auto& [a, b] : topology.edges) {
    SECGAME_CHECK_MSG(valid(a) && valid(b), "edge references invalid node id");
    SECGAME_CHECK_MSG(a != b, "self loops are not allowed");
    SECGAME_CHECK_MSG(a < b, "edges must be stored normalized");
  }
  // Connectivity via BFS from the start node.
  std::vector<bool> seen(topology.node_count, false);
  std::queue<NodeId> frontier;
  frontier.push(topology.start_id);
  seen[topology.start_id] = true;
  int reached = 1;
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop();
    for (NodeId nb : topology.Neighbors(n)) {
      if (!seen[nb]) {
        seen[nb] = true;
        ++reached;
        frontier.push(nb);
      }
    }
  }
  SECGAME_CHECK_MSG(reached == topology.node_count, "graph is not connected");
}

std::string GameStatusName(GameStatus status) {
  switch (status) {
    case GameStatus::kOngoing: return "ongoing";
    case GameStatus::kAttackerWin: return "attacker_win";
    case GameStatus::kDefenderWin: return "defender_win";
    case GameStatus::kDraw: return "draw";
  }
  return "unknown";
}

GameStatus GameStatusFromName(const std::string& name) {
  if (name == "ongoing") return GameStatus::kOngoing;
  if (name == "attacker_win") return GameStatus::kAttackerWin;
  if (name == "defender_win") return GameStatus::kDefenderWin;
  if (name == "draw") return GameStatus::kDraw;
  throw ContractError("unknown game status: " + name);
}

std::string ToString(const AttackerAction& action) {
  std::ostringstream oss;
  if (action.kind == AttackerAction::Kind::kRecon) {
    oss << "Recon(node " << action.node << ")";
  } else {
    oss << "Attack(node " << action.node << ", type " << action.attack_type
        << ")";
  }
  return oss.str();
}

std::string ToString(const DefenderAction& action) {
  std::ostringstream oss;
  if (action.kind == DefenderAction::Kind::kMonitor) {
    oss << "Monitor(node " << action.node << ")";
  } else {
    oss << "Defend(node " << action.node << ", type " << action.defense_type
        << ")";
  }
  return oss.str();
}

GameState NewGame(const ScenarioSpec& spec, int max_rounds) {
  ValidateScenario(spec);
  SECGAME_CHECK_MSG(max_rounds > 0, "max_rounds must be positive");
  GameState state;
  state.constants = spec.constants;
  state.topology = spec.topology;
  const int n = spec.topology.node_count;
  const int m = spec.constants.attack_type_count;
  state.attack.assign(n, std::vector<int>(m, 0));
  state.defense = spec.initial_defense;
  state.compromised = {spec.topology.start_id};
  state.reconned = {};
  state.round = 0;
  state.max_rounds = max_rounds;
  state.status = GameStatus::kOngoing;
  return state;
}

std::set<NodeId> VisibleNodes(const GameState& state) {
  std::set<NodeId> visible = state.compromised;
  for (const auto& [a, b] : state.topology.edges) {
    if (state.compromised.count(a)) visible.insert(b);
    if (state.compromised.count(b)) visible.insert(a);
  }
  return visible;
}

std::vector<AttackerAction> LegalAttackerActions(const GameState& state) {
  std::vector<AttackerAction> actions;
  if (state.IsTerminal()) return actions;
  const std::set<NodeId> visible = VisibleNodes(state);
  const int m = state.constants.attack_type_count;
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    if (!visible.count(n)) continue;
    if (!state.compromised.count(n)) {
      for (int j = 0; j < m; ++j) actions.push_back(AttackerAction::Attack(n, j));
    }
    actions.push_back(AttackerAction::Recon(n));
  }
  return actions;
}

std::vector<DefenderAction> LegalDefenderActions(const GameState& state) {
  std::vector<DefenderAction> actions;
  if (state.IsTerminal()) return actions;
  const int m = state.constants.attack_type_count;
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    if (n == state.topology.start_id) continue;
    for (int j = 0; j < m; ++j) actions.push_back(DefenderAction::Defend(n, j));
    actions.push_back(DefenderAction::Monitor(n));
  }
  return actions;
}

bool IsLegal(const GameState& state, const AttackerAction& action) {
  if (state.IsTerminal()) return false;
  if (action.node < 0 || action.node >= state.topology.node_count) return false;
  const std::set<NodeId> visible = VisibleNodes(state);
  if (!visible.count(action.node)) return false;
  if (action.kind == AttackerAction::Kind::kRecon) return true;
  if (action.attack_type < 0 ||
      action.attack_type >= state.constants.attack_type_count) {
    return false;
  }
  return state.compromised.count(action.node) == 0;
}

bool IsLegal(const GameState& state, const DefenderAction& action) {
  if (state.IsTerminal()) return false;
  if (action.node < 0 || action.node >= state.topology.node_count) return false;
  if (action.node == state.topology.start_id) return false;
  if (action.kind == DefenderAction::Kind::kDefend &&
      (action.defense_type < 0 ||
       action.defense_type >= state.constants.attack_type_count)) {
    return false;
  }
  return true;
}

double DetectionProbability(const GameState& state, NodeId node) {
  SECGAME_CHECK_MSG(node >= 0 && node < state.topology.node_count,
                    "invalid node id " << node);
  const int m = state.constants.attack_type_count;
  return static_cast<double>(state.defense[node][m]) /
         (state.constants.max_attribute_value + 1);
}

StepResult Step(const GameState& state, const DefenderAction& defense,
                const AttackerAction& attack, Rng& rng) {
  SECGAME_CHECK_MSG(!state.IsTerminal(), "step on a terminal state");
  SECGAME_CHECK_MSG(IsLegal(state, defense),
                    "illegal defender action " << ToString(defense));
  SECGAME_CHECK_MSG(IsLegal(state, attack),
                    "illegal attacker action " << ToString(attack));

  StepResult result;
  result.next_state = state;
  GameState& next = result.next_state;
  const int m = state.constants.attack_type_count;
  const int w = state.constants.max_attribute_value;

  // Defender hardens first; the attack then resolves against the updated
  // defenses.
  {
    const int column =
        defense.kind == DefenderAction::Kind::kDefend ? defense.defense_type : m;
    int& value = next.defense[defense.node][column];
    value = std::min(value + 1, w);
  }

  if (attack.kind == AttackerAction::Kind::kRecon) {
    next.reconned.insert(attack.node);
  } else {
    int& value = next.attack[attack.node][attack.attack_type];
    value = std::min(value + 1, w);
    if (value > next.defense[attack.node][attack.attack_type]) {
      next.compromised.insert(attack.node);
      result.compromised_nodes.push_back(attack.node);
      if (attack.node == next.topology.data_id) {
        next.status = GameStatus::kAttackerWin;
        result.attacker_reward = 1;
        result.defender_reward = -1;
      }
    } else if (rng.Bernoulli(DetectionProbability(next, attack.node))) {
      result.detected = true;
      next.status = GameStatus::kDefenderWin;
      result.attacker_reward = -1;
      result.defender_reward = 1;
    }
  }

  next.round += 1;
  if (next.status == GameStatus::kOngoing && next.round >= next.max_rounds) {
    next.status = GameStatus::kDraw;
  }
  return result;
}

std::vector<double> AttackerObservation(const GameState& state) {
  const int m = state.constants.attack_type_count;
  const double w = state.constants.max_attribute_value;
  const std::set<NodeId> visible = VisibleNodes(state);
  std::vector<double> obs;
  obs.reserve(state.topology.node_count * (2 * m + 3));
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    for (int j = 0; j < m; ++j) obs.push_back(state.attack[n][j] / w);
    const bool defense_known =
        state.reconned.count(n) > 0 || state.compromised.count(n) > 0;
    for (int j = 0; j <= m; ++j) {
      obs.push_back(defense_known ? state.defense[n][j] / w : -1.0);
    }
    obs.push_back(visible.count(n) ? 1.0 : 0.0);
    obs.push_back(state.compromised.count(n) ? 1.0 : 0.0);
  }
  return obs;
}

std::vector<double> DefenderObservation(const GameState& state) {
  const int m = state.constants.attack_type_count;
  const double w = state.constants.max_attribute_value;
  std::vector<double> obs;
  obs.reserve((state.topology.node_count - 1) * (m + 1));
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    if (n == state.topology.start_id) continue;
    for (int j = 0; j <= m; ++j) obs.push_back(state.defense[n][j] / w);
  }
  return obs;
}

nlohmann::ordered_json TopologyToJson(const Topology& topology) {
  nlohmann::ordered_json j;
  j["node_count"] = topology.node_count;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : topology.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["start_id"] = topology.start_id;
  j["data_id"] = topology.data_id;
  return j;
}

Topology TopologyFromJson(const nlohmann::json& j) {
  Topology topology;
  topology.node_count = j.at("node_count").get<int>();
  for (const auto& e : j.at("edges")) {
    SECGAME_CHECK_MSG(e.is_array() && e.size() == 2, "edge must be a pair");
    topology.edges.insert(NormalizedEdge(e[0].get<int>(), e[1].get<int>()));
  }
  topology.start_id = j.at("start_id").get<NodeId>();
  topology.data_id = j.at("data_id").get<NodeId>();
  return topology;
}

nlohmann::ordered_json GameStateToJson(const GameState& state) {
  nlohmann::ordered_json j;
  j["constants"] = {{"m", state.constants.attack_type_count},
                    {"w", state.constants.max_attribute_value},
                    {"max_rounds", state.max_rounds}};
  j["topology"] = TopologyToJson(state.topology);
  j["attack"] = state.attack;
  j["defense"] = state.defense;
  j["compromised"] = std::vector<NodeId>(state.compromised.begin(),
                                         state.compromised.end());
  j["reconned"] = std::vector<NodeId>(state.reconned.begin(),
                                      state.reconned.end());
  j["round"] = state.round;
  j["status"] = GameStatusName(state.status);
  return j;
}

GameState GameStateFromJson(const nlohmann::json& j) {
  GameState state;
  const auto& constants = j.at("constants");
  state.constants.attack_type_count = constants.at("m").get<int>();
  state.constants.max_attribute_value = constants.at("w").get<int>();
  state.max_rounds = constants.at("max_rounds").get<int>();
  state.topology = TopologyFromJson(j.at("topology"));
  state.attack = j.at("attack").get<std::vector<std::vector<int>>>();
  state.defense = j.at("defense").get<std::vector<std::vector<int>>>();
  for (const auto& n : j.at("compromised")) state.compromised.insert(n.get<NodeId>());
  for (const auto& n : j.at("reconned")) state.reconned.insert(n.get<NodeId>());
  state.round = j.at("round").get<int>();
  state.status = GameStatusFromName(j.at("status").get<std::string>());
  return state;
}

std::uint64_t Fnv1aHash(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t GameStateHash(const GameState& state) {
  return Fnv1aHash(GameStateToJson(state).dump());
}

}  // namespace secgame
