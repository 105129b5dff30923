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
// Round-based zero-sum intrusion game between an attacker and a defender on
// a network graph. Each node carries integer attack/defense attribute
// vectors; the attacker probes and escalates attacks while the defender
// hardens nodes and improves detection. The attacker wins by compromising
// the data node, the defender wins by detecting a failed attack.

#ifndef SECGAME_GAME_H_
#define SECGAME_GAME_H_

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "secgame/rng.h"

namespace secgame {

using NodeId = int;

// Undirected network graph with distinguished start (attacker-owned) and
// data (attack target) nodes. Edges are stored normalized (a < b).
struct Topology {
  int node_count = 0;
  std::set<std::pair<NodeId, NodeId>> edges;
  NodeId start_id = 0;
  NodeId data_id = 0;

  bool HasEdge(NodeId a, NodeId b) const;
  std::vector<NodeId> Neighbors(NodeId node) const;
  bool operator==(const Topology&) const = default;
};

// Throws ContractError unless the graph is connected, has no self loops,
// references only valid node ids and start != data.
void ValidateTopology(const Topology& topology);

std::pair<NodeId, NodeId> NormalizedEdge(NodeId a, NodeId b);

struct GameConstants {
  int attack_type_count = 0;   // m
  int max_attribute_value = 0; // w

  bool operator==(const GameConstants&) const = default;
};

enum class GameStatus { kOngoing, kAttackerWin, kDefenderWin, kDraw };

std::string GameStatusName(GameStatus status);
GameStatus GameStatusFromName(const std::string& name);

struct AttackerAction {
  enum class Kind { kRecon, kAttack };
  Kind kind = Kind::kRecon;
  NodeId node = 0;
  int attack_type = 0;  // meaningful only for kAttack

  static AttackerAction Recon(NodeId node) {
    return {Kind::kRecon, node, 0};
  }
  static AttackerAction Attack(NodeId node, int attack_type) {
    return {Kind::kAttack, node, attack_type};
  }
  bool operator==(const AttackerAction&) const = default;
};

struct DefenderAction {
  enum class Kind { kMonitor, kDefend };
  Kind kind = Kind::kMonitor;
  NodeId node = 0;
  int defense_type = 0;  // meaningful only for kDefend

  static DefenderAction Monitor(NodeId node) {
    return {Kind::kMonitor, node, 0};
  }
  static DefenderAction Defend(NodeId node, int defense_type) {
    return {Kind::kDefend, node, defense_type};
  }
  bool operator==(const DefenderAction&) const = default;
};

std::string ToString(const AttackerAction& action);
std::string ToString(const DefenderAction& action);

// Full joint state of one game. defense has m+1 columns per node; column m
// is the detection attribute. All attribute values stay within [0, w].
struct GameState {
  GameConstants constants;
  Topology topology;
  std::vector<std::vector<int>> attack;   // [node][m]
  std::vector<std::vector<int>> defense;  // [node][m+1]
  std::set<NodeId> compromised;
  std::set<NodeId> reconned;
  int round = 0;
  int max_rounds = 0;
  GameStatus status = GameStatus::kOngoing;

  bool IsTerminal() const { return status != GameStatus::kOngoing; }
};

struct StepResult {
  GameState next_state;
  int attacker_reward = 0;
  int defender_reward = 0;
  bool detected = false;
  std::vector<NodeId> compromised_nodes;  // newly compromised this round
};

struct ScenarioSpec;  // defined in scenarios.h

// Fresh game: zero attack matrix, defense matrix copied from the scenario,
// compromised = {start}, nothing reconned yet.
GameState NewGame(const ScenarioSpec& spec, int max_rounds);

// Nodes the attacker can see and act on: every compromised node plus all
// neighbors of compromised nodes.
std::set<NodeId> VisibleNodes(const GameState& state);

// Legal actions, in ascending flat-index order (see policies.h): per node,
// typed actions by type then the recon/monitor action.
std::vector<AttackerAction> LegalAttackerActions(const GameState& state);
std::vector<DefenderAction> LegalDefenderActions(const GameState& state);

bool IsLegal(const GameState& state, const AttackerAction& action);
bool IsLegal(const GameState& state, const DefenderAction& action);

// Probability that a failed attack on `node` is detected:
// detection_attribute / (w + 1).
double DetectionProbability(const GameState& state, NodeId node);

// Advances one round. The defender's increment is applied first, then the
// attacker's action resolves against the updated defenses. A compromise
// requires attack value strictly greater than defense value. Only failed
// attacks risk detection; recon never does. Hitting max_rounds with no
// winner yields a draw. Throws on terminal states or illegal actions.
StepResult Step(const GameState& state, const DefenderAction& defense,
                const AttackerAction& attack, Rng& rng);

// Attacker view: per node, attack values (scaled by 1/w), defense values
// (scaled, or -1 sentinels until the node is reconned or compromised), a
// visibility flag and a compromised flag. Length |N| * (2m + 3).
std::vector<double> AttackerObservation(const GameState& state);

// Defender view: defense values of defender-owned nodes scaled by 1/w.
// Length (|N| - 1) * (m + 1).
std::vector<double> DefenderObservation(const GameState& state);

// Canonical JSON round trip (fixed field order: constants, topology, attack,
// defense, compromised, reconned, round, status).
nlohmann::ordered_json GameStateToJson(const GameState& state);
GameState GameStateFromJson(const nlohmann::json& j);

nlohmann::ordered_json TopologyToJson(const Topology& topology);
Topology TopologyFromJson(const nlohmann::json& j);

// FNV-1a hash of the canonical serialization; used by replay checks.
std::uint64_t GameStateHash(const GameState& state);
std::uint64_t Fnv1aHash(const std::string& bytes);

}  // namespace secgame

#endif  // SECGAME_GAME_H_
