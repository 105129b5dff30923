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
// Uniform policy interface over heuristic opponents, the flat neural policy
// and the two-network autoregressive policy. Actions are encoded in a flat
// categorical space of size |N| * (m + 1): index = node * (m + 1) + type,
// where type == m stands for recon (attacker) or monitor (defender).

#ifndef SECGAME_POLICIES_H_
#define SECGAME_POLICIES_H_

#include <memory>
#include <string>
#include <vector>

#include "secgame/game.h"
#include "secgame/neural.h"

namespace secgame {

enum class Role { kAttacker, kDefender };

std::string RoleName(Role role);
Role RoleFromName(const std::string& name);

int FlatActionCount(const Topology& topology, const GameConstants& constants);

int EncodeAction(const AttackerAction& action, const GameConstants& constants);
int EncodeAction(const DefenderAction& action, const GameConstants& constants);
AttackerAction DecodeAttackerAction(int index, const GameConstants& constants);
DefenderAction DecodeDefenderAction(int index, const GameConstants& constants);

// Legality masks. The flat mask matches LegalAttackerActions /
// LegalDefenderActions element for element; the node mask marks nodes with
// at least one legal type; type masks are per node over m+1 types.
std::vector<std::uint8_t> FlatActionMask(const GameState& state, Role role);
std::vector<std::uint8_t> NodeMask(const GameState& state, Role role);
std::vector<std::vector<std::uint8_t>> TypeMasks(const GameState& state,
                                                 Role role);

// One sampled action with its behavior statistics.
struct Decision {
  int flat_action = 0;
  double log_prob = 0.0;  // joint log-probability under the acting policy
  double value = 0.0;     // critic estimate; 0 for heuristics
};

// Static heuristics. DefendMinimal increments a uniformly chosen global
// minimum over all defender-owned attributes (detection included);
// AttackMaximal increments a uniformly chosen global maximum attack value
// over visible, non-compromised nodes and never recons. Throws when no
// attack target exists.
DefenderAction DefendMinimal(const GameState& state, Rng& rng);
AttackerAction AttackMaximal(const GameState& state, Rng& rng);

struct SampledFlat {
  int index = 0;
  double log_prob = 0.0;
  double value = 0.0;
};

// Masked categorical sampling from the policy head; illegal actions get
// probability zero and the rest renormalize.
SampledFlat ActFlat(const ActorCriticNet& net, const std::vector<double>& obs,
                    const std::vector<std::uint8_t>& legal_mask, Rng& rng);

// Node-then-type factored policy. The node network carries the critic; the
// type network conditions on the observation concatenated with a one-hot
// encoding of the chosen node.
struct AutoregressiveNets {
  ActorCriticNet node_net;  // logits over |N| nodes, with value head
  ActorCriticNet type_net;  // logits over m+1 types, no value head
};

struct SampledAutoregressive {
  int node = 0;
  int type = 0;
  double log_prob = 0.0;       // log p(node) + log p(type | node)
  double node_log_prob = 0.0;
  double type_log_prob = 0.0;
  double value = 0.0;
};

SampledAutoregressive ActAutoregressive(
    const AutoregressiveNets& nets, const std::vector<double>& obs,
    const std::vector<std::uint8_t>& node_mask,
    const std::vector<std::vector<std::uint8_t>>& type_masks_per_node,
    Rng& rng);

// Observation for a role, as used by that role's networks.
std::vector<double> ObservationFor(const GameState& state, Role role);
int ObservationLength(const Topology& topology, const GameConstants& constants,
                      Role role);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Role role() const = 0;
  virtual std::string kind() const = 0;
  virtual Decision Act(const GameState& state, Rng& rng) const = 0;
  virtual std::unique_ptr<Policy> Clone() const = 0;
  // Tagged checkpoint: {kind, role, ...networks}.
  virtual nlohmann::ordered_json Checkpoint() const;
};

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(Role role) : role_(role) {}
  Role role() const override { return role_; }
  std::string kind() const override { return "random"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<RandomPolicy>(role_);
  }

 private:
  Role role_;
};

class DefendMinimalPolicy : public Policy {
 public:
  Role role() const override { return Role::kDefender; }
  std::string kind() const override { return "defend-minimal"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<DefendMinimalPolicy>();
  }
};

// Falls back to a uniform recon (and logs once) when no attack is legal.
class AttackMaximalPolicy : public Policy {
 public:
  Role role() const override { return Role::kAttacker; }
  std::string kind() const override { return "attack-maximal"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<AttackMaximalPolicy>();
  }
};

// Scripted attacker that only performs reconnaissance; handy for replay and
// draw-path testing.
class ReconOnlyPolicy : public Policy {
 public:
  Role role() const override { return Role::kAttacker; }
  std::string kind() const override { return "recon-only"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<ReconOnlyPolicy>();
  }
};

class FlatNeuralPolicy : public Policy {
 public:
  FlatNeuralPolicy(Role role, ActorCriticNet net);
  Role role() const override { return role_; }
  std::string kind() const override { return "flat"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<FlatNeuralPolicy>(role_, net_);
  }
  nlohmann::ordered_json Checkpoint() const override;

  ActorCriticNet& net() { return net_; }
  const ActorCriticNet& net() const { return net_; }

 private:
  Role role_;
  ActorCriticNet net_;
};

class AutoregressivePolicy : public Policy {
 public:
  AutoregressivePolicy(Role role, AutoregressiveNets nets);
  Role role() const override { return role_; }
  std::string kind() const override { return "autoregressive"; }
  Decision Act(const GameState& state, Rng& rng) const override;
  std::unique_ptr<Policy> Clone() const override {
    return std::make_unique<AutoregressivePolicy>(role_, nets_);
  }
  nlohmann::ordered_json Checkpoint() const override;

  AutoregressiveNets& nets() { return nets_; }
  const AutoregressiveNets& nets() const { return nets_; }

 private:
  Role role_;
  AutoregressiveNets nets_;
};

std::unique_ptr<Policy> PolicyFromCheckpoint(const nlohmann::json& j);

// Builders for freshly initialized neural policies of either representation.
FlatNeuralPolicy MakeFlatPolicy(Role role, const Topology& topology,
                                const GameConstants& constants,
                                Activation activation, int hidden_dim,
                                Rng& rng);
AutoregressivePolicy MakeAutoregressivePolicy(Role role,
                                              const Topology& topology,
                                              const GameConstants& constants,
                                              Activation activation,
                                              int hidden_dim, Rng& rng);

}  // namespace secgame

#endif  // SECGAME_POLICIES_H_
