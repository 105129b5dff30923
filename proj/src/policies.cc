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

#include "secgame/policies.h"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>

namespace secgame {

namespace {

Eigen::VectorXd ToVector(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

std::vector<double> ConcatOneHot(const std::vector<double>& obs, int index,
                                 int size) {
  std::vector<double> out = obs;
  out.resize(obs.size() + size, 0.0);
  out[obs.size() + index] = 1.0;
  return out;
}

}  // namespace

std::string RoleName(Role role) {
  return role == Role::kAttacker ? "attacker" : "defender";
}

Role RoleFromName(const std::string& name) {
  if (name == "attacker") return Role::kAttacker;
  if (name == "defender") return Role::kDefender;
  throw ContractError("unknown role: " + name);
}

int FlatActionCount(const Topology& topology, const GameConstants& constants) {
  return topology.node_count * (constants.attack_type_count + 1);
}

int EncodeAction(const AttackerAction& action, const GameConstants& constants) {
  const int m = constants.attack_type_count;
  return action.node * (m + 1) +
         (action.kind == AttackerAction::Kind::kRecon ? m : action.attack_type);
}

int EncodeAction(const DefenderAction& action, const GameConstants& constants) {
  const int m = constants.attack_type_count;
  return action.node * (m + 1) +
         (action.kind == DefenderAction::Kind::kMonitor ? m
                                                        : action.defense_type);
}

AttackerAction DecodeAttackerAction(int index, const GameConstants& constants) {
  const int m = constants.attack_type_count;
  SECGAME_CHECK_MSG(index >= 0, "flat action index out of range");
  const int node = index / (m + 1);
  const int type = index % (m + 1);
  return type == m ? AttackerAction::Recon(node)
                   : AttackerAction::Attack(node, type);
}

DefenderAction DecodeDefenderAction(int index, const GameConstants& constants) {
  const int m = constants.attack_type_count;
  SECGAME_CHECK_MSG(index >= 0, "flat action index out of range");
  const int node = index / (m + 1);
  const int type = index % (m + 1);
  return type == m ? DefenderAction::Monitor(node)
                   : DefenderAction::Defend(node, type);
}

std::vector<std::uint8_t> FlatActionMask(const GameState& state, Role role) {
  const int count = FlatActionCount(state.topology, state.constants);
  std::vector<std::uint8_t> mask(count, 0);
  if (role == Role::kAttacker) {
    for (const auto& action : LegalAttackerActions(state)) {
      mask[EncodeAction(action, state.constants)] = 1;
    }
  } else {
    for (const auto& action : LegalDefenderActions(state)) {
      mask[EncodeAction(action, state.constants)] = 1;
    }
  }
  return mask;
}

std::vector<std::uint8_t> NodeMask(const GameState& state, Role role) {
  std::vector<std::uint8_t> mask(state.topology.node_count, 0);
  if (state.IsTerminal()) return mask;
  if (role == Role::kAttacker) {
    for (NodeId n : VisibleNodes(state)) mask[n] = 1;
  } else {
    for (NodeId n = 0; n < state.topology.node_count; ++n) {
      mask[n] = n != state.topology.start_id;
    }
  }
  return mask;
}

std::vector<std::vector<std::uint8_t>> TypeMasks(const GameState& state,
                                                 Role role) {
  const int m = state.constants.attack_type_count;
  std::vector<std::vector<std::uint8_t>> masks(
      state.topology.node_count, std::vector<std::uint8_t>(m + 1, 0));
  if (state.IsTerminal()) return masks;
  if (role == Role::kAttacker) {
    for (NodeId n : VisibleNodes(state)) {
      masks[n][m] = 1;  // recon
      if (!state.compromised.count(n)) {
        for (int j = 0; j < m; ++j) masks[n][j] = 1;
      }
    }
  } else {
    for (NodeId n = 0; n < state.topology.node_count; ++n) {
      if (n == state.topology.start_id) continue;
      for (int j = 0; j <= m; ++j) masks[n][j] = 1;
    }
  }
  return masks;
}

DefenderAction DefendMinimal(const GameState& state, Rng& rng) {
  SECGAME_CHECK_MSG(!state.IsTerminal(), "DefendMinimal on a terminal state");
  const int m = state.constants.attack_type_count;
  int min_value = std::numeric_limits<int>::max();
  std::vector<std::pair<NodeId, int>> candidates;
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    if (n == state.topology.start_id) continue;
    for (int j = 0; j <= m; ++j) {
      const int value = state.defense[n][j];
      if (value < min_value) {
        min_value = value;
        candidates.clear();
      }
      if (value == min_value) candidates.emplace_back(n, j);
    }
  }
  const auto [node, attr] = candidates[rng.UniformInt(candidates.size())];
  return attr == m ? DefenderAction::Monitor(node)
                   : DefenderAction::Defend(node, attr);
}

AttackerAction AttackMaximal(const GameState& state, Rng& rng) {
  SECGAME_CHECK_MSG(!state.IsTerminal(), "AttackMaximal on a terminal state");
  const int m = state.constants.attack_type_count;
  const std::set<NodeId> visible = VisibleNodes(state);
  int max_value = std::numeric_limits<int>::min();
  std::vector<std::pair<NodeId, int>> candidates;
  for (NodeId n : visible) {
    if (state.compromised.count(n)) continue;
    for (int j = 0; j < m; ++j) {
      const int value = state.attack[n][j];
      if (value > max_value) {
        max_value = value;
        candidates.clear();
      }
      if (value == max_value) candidates.emplace_back(n, j);
    }
  }
  SECGAME_CHECK_MSG(!candidates.empty(), "no legal attack target");
  const auto [node, type] = candidates[rng.UniformInt(candidates.size())];
  return AttackerAction::Attack(node, type);
}

SampledFlat ActFlat(const ActorCriticNet& net, const std::vector<double>& obs,
                    const std::vector<std::uint8_t>& legal_mask, Rng& rng) {
  const NetOutput out = ForwardOne(net, ToVector(obs));
  const MaskedCategorical dist = MaskedSoftmax(out.logits, legal_mask);
  SampledFlat sampled;
  sampled.index = SampleCategorical(dist.probs, rng);
  sampled.log_prob = dist.LogProb(sampled.index);
  sampled.value = out.value;
  return sampled;
}

SampledAutoregressive ActAutoregressive(
    const AutoregressiveNets& nets, const std::vector<double>& obs,
    const std::vector<std::uint8_t>& node_mask,
    const std::vector<std::vector<std::uint8_t>>& type_masks_per_node,
    Rng& rng) {
  const int node_count = nets.node_net.action_count;
  SECGAME_CHECK_MSG(static_cast<int>(node_mask.size()) == node_count,
                    "node mask length mismatch");
  for (int n = 0; n < node_count; ++n) {
    if (!node_mask[n]) continue;
    bool any = false;
    for (std::uint8_t bit : type_masks_per_node[n]) any = any || bit != 0;
    SECGAME_CHECK_MSG(any, "node " << n << " is unmasked but has no legal type");
  }

  const NetOutput node_out = ForwardOne(nets.node_net, ToVector(obs));
  const MaskedCategorical node_dist = MaskedSoftmax(node_out.logits, node_mask);

  SampledAutoregressive sampled;
  sampled.node = SampleCategorical(node_dist.probs, rng);
  sampled.node_log_prob = node_dist.LogProb(sampled.node);
  sampled.value = node_out.value;

  const std::vector<double> type_input =
      ConcatOneHot(obs, sampled.node, node_count);
  const NetOutput type_out = ForwardOne(nets.type_net, ToVector(type_input));
  const MaskedCategorical type_dist =
      MaskedSoftmax(type_out.logits, type_masks_per_node[sampled.node]);
  sampled.type = SampleCategorical(type_dist.probs, rng);
  sampled.type_log_prob = type_dist.LogProb(sampled.type);
  sampled.log_prob = sampled.node_log_prob + sampled.type_log_prob;
  return sampled;
}

std::vector<double> ObservationFor(const GameState& state, Role role) {
  return role == Role::kAttacker ? AttackerObservation(state)
                                 : DefenderObservation(state);
}

int ObservationLength(const Topology& topology, const GameConstants& constants,
                      Role role) {
  const int m = constants.attack_type_count;
  if (role == Role::kAttacker) return topology.node_count * (2 * m + 3);
  return (topology.node_count - 1) * (m + 1);
}

nlohmann::ordered_json Policy::Checkpoint() const {
  nlohmann::ordered_json j;
  j["kind"] = kind();
  j["role"] = RoleName(role());
  return j;
}

Decision RandomPolicy::Act(const GameState& state, Rng& rng) const {
  const std::vector<std::uint8_t> mask = FlatActionMask(state, role_);
  std::vector<int> legal;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) legal.push_back(static_cast<int>(i));
  }
  SECGAME_CHECK_MSG(!legal.empty(), "no legal action for random policy");
  Decision decision;
  decision.flat_action = legal[rng.UniformInt(legal.size())];
  decision.log_prob = -std::log(static_cast<double>(legal.size()));
  return decision;
}

Decision DefendMinimalPolicy::Act(const GameState& state, Rng& rng) const {
  const int m = state.constants.attack_type_count;
  // Count ties to report the true selection probability.
  int min_value = std::numeric_limits<int>::max();
  int ties = 0;
  for (NodeId n = 0; n < state.topology.node_count; ++n) {
    if (n == state.topology.start_id) continue;
    for (int j = 0; j <= m; ++j) {
      if (state.defense[n][j] < min_value) {
        min_value = state.defense[n][j];
        ties = 0;
      }
      if (state.defense[n][j] == min_value) ++ties;
    }
  }
  const DefenderAction action = DefendMinimal(state, rng);
  Decision decision;
  decision.flat_action = EncodeAction(action, state.constants);
  decision.log_prob = -std::log(static_cast<double>(ties));
  return decision;
}

Decision AttackMaximalPolicy::Act(const GameState& state, Rng& rng) const {
  const std::set<NodeId> visible = VisibleNodes(state);
  bool has_attack_target = false;
  for (NodeId n : visible) {
    if (!state.compromised.count(n)) has_attack_target = true;
  }
  if (!has_attack_target) {
    // All visible nodes already compromised: recon uniformly instead.
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      std::cerr << "attack-maximal: no attack target, falling back to recon\n";
    }
    std::vector<NodeId> nodes(visible.begin(), visible.end());
    const NodeId node = nodes[rng.UniformInt(nodes.size())];
    Decision decision;
    decision.flat_action =
        EncodeAction(AttackerAction::Recon(node), state.constants);
    decision.log_prob = -std::log(static_cast<double>(nodes.size()));
    return decision;
  }

  const int m = state.constants.attack_type_count;
  int max_value = std::numeric_limits<int>::min();
  int ties = 0;
  for (NodeId n : visible) {
    if (state.compromised.count(n)) continue;
    for (int j = 0; j < m; ++j) {
      if (state.attack[n][j] > max_value) {
        max_value = state.attack[n][j];
        ties = 0;
      }
      if (state.attack[n][j] == max_value) ++ties;
    }
  }
  const AttackerAction action = AttackMaximal(state, rng);
  Decision decision;
  decision.flat_action = EncodeAction(action, state.constants);
  decision.log_prob = -std::log(static_cast<double>(ties));
  return decision;
}

Decision ReconOnlyPolicy::Act(const GameState& state, Rng& rng) const {
  const std::set<NodeId> visible = VisibleNodes(state);
  std::vector<NodeId> nodes(visible.begin(), visible.end());
  const NodeId node = nodes[rng.UniformInt(nodes.size())];
  Decision decision;
  decision.flat_action =
      EncodeAction(AttackerAction::Recon(node), state.constants);
  decision.log_prob = -std::log(static_cast<double>(nodes.size()));
  return decision;
}

FlatNeuralPolicy::FlatNeuralPolicy(Role role, ActorCriticNet net)
    : role_(role), net_(std::move(net)) {}

Decision FlatNeuralPolicy::Act(const GameState& state, Rng& rng) const {
  const SampledFlat sampled = ActFlat(net_, ObservationFor(state, role_),
                                      FlatActionMask(state, role_), rng);
  return {sampled.index, sampled.log_prob, sampled.value};
}

nlohmann::ordered_json FlatNeuralPolicy::Checkpoint() const {
  nlohmann::ordered_json j = Policy::Checkpoint();
  j["net"] = NetToJson(net_);
  return j;
}

AutoregressivePolicy::AutoregressivePolicy(Role role, AutoregressiveNets nets)
    : role_(role), nets_(std::move(nets)) {}

Decision AutoregressivePolicy::Act(const GameState& state, Rng& rng) const {
  const SampledAutoregressive sampled =
      ActAutoregressive(nets_, ObservationFor(state, role_),
                        NodeMask(state, role_), TypeMasks(state, role_), rng);
  const int m = state.constants.attack_type_count;
  Decision decision;
  decision.flat_action = sampled.node * (m + 1) + sampled.type;
  decision.log_prob = sampled.log_prob;
  decision.value = sampled.value;
  return decision;
}

nlohmann::ordered_json AutoregressivePolicy::Checkpoint() const {
  nlohmann::ordered_json j = Policy::Checkpoint();
  j["node_net"] = NetToJson(nets_.node_net);
  j["type_net"] = NetToJson(nets_.type_net);
  return j;
}

std::unique_ptr<Policy> PolicyFromCheckpoint(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Role role = RoleFromName(j.at("role").get<std::string>());
  if (kind == "random") return std::make_unique<RandomPolicy>(role);
  if (kind == "defend-minimal") {
    SECGAME_CHECK_MSG(role == Role::kDefender, "defend-minimal is a defender");
    return std::make_unique<DefendMinimalPolicy>();
  }
  if (kind == "attack-maximal") {
    SECGAME_CHECK_MSG(role == Role::kAttacker, "attack-maximal is an attacker");
    return std::make_unique<AttackMaximalPolicy>();
  }
  if (kind == "recon-only") {
    SECGAME_CHECK_MSG(role == Role::kAttacker, "recon-only is an attacker");
    return std::make_unique<ReconOnlyPolicy>();
  }
  if (kind == "flat") {
    return std::make_unique<FlatNeuralPolicy>(role, NetFromJson(j.at("net")));
  }
  if (kind == "autoregressive") {
    AutoregressiveNets nets{NetFromJson(j.at("node_net")),
                            NetFromJson(j.at("type_net"))};
    return std::make_unique<AutoregressivePolicy>(role, std::move(nets));
  }
  throw ContractError("unknown policy kind: " + kind);
}

FlatNeuralPolicy MakeFlatPolicy(Role role, const Topology& topology,
                                const GameConstants& constants,
                                Activation activation, int hidden_dim,
                                Rng& rng) {
  return FlatNeuralPolicy(
      role, MakeNet(ObservationLength(topology, constants, role),
                    FlatActionCount(topology, constants), true, activation,
                    hidden_dim, rng));
}

AutoregressivePolicy MakeAutoregressivePolicy(Role role,
                                              const Topology& topology,
                                              const GameConstants& constants,
                                              Activation activation,
                                              int hidden_dim, Rng& rng) {
  const int obs_len = ObservationLength(topology, constants, role);
  AutoregressiveNets nets;
  nets.node_net = MakeNet(obs_len, topology.node_count, true, activation,
                          hidden_dim, rng);
  nets.type_net =
      MakeNet(obs_len + topology.node_count, constants.attack_type_count + 1,
              false, activation, hidden_dim, rng);
  return AutoregressivePolicy(role, std::move(nets));
}

}  // namespace secgame
