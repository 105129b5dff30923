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

#include <cmath>

#include "doctest.h"
#include "secgame/policies.h"
#include "secgame/scenarios.h"

namespace secgame {
namespace {

// Star topology: start connected to every other node. Lets tests reach
// visibility configurations the diamond cannot.
ScenarioSpec StarScenario() {
  ScenarioSpec spec;
  spec.topology.node_count = 4;
  spec.topology.start_id = 0;
  spec.topology.data_id = 3;
  spec.topology.edges = {{0, 1}, {0, 2}, {0, 3}};
  spec.constants = {4, 9};
  spec.initial_defense.assign(4, std::vector<int>(5, 1));
  spec.initial_defense[0].assign(5, 0);
  spec.initial_attack.assign(4, std::vector<int>(4, 0));
  return spec;
}

ScenarioSpec TwoNodeScenario(int m, int defense_value) {
  ScenarioSpec spec;
  spec.topology.node_count = 2;
  spec.topology.start_id = 0;
  spec.topology.data_id = 1;
  spec.topology.edges = {{0, 1}};
  spec.constants = {m, 9};
  spec.initial_defense = {std::vector<int>(m + 1, 0),
                          std::vector<int>(m + 1, defense_value)};
  spec.initial_attack.assign(2, std::vector<int>(m, 0));
  return spec;
}

// Rule-based recount of the legal-action closed forms, independent of the
// enumeration order used by the implementation.
int RecountAttackerActions(const GameState& state) {
  if (state.IsTerminal()) return 0;
  const auto visible = VisibleNodes(state);
  int count = static_cast<int>(visible.size());  // one recon per visible node
  for (NodeId n : visible) {
    if (!state.compromised.count(n)) count += state.constants.attack_type_count;
  }
  return count;
}

TEST_CASE("topology validation") {
  Topology t;
  t.node_count = 4;
  t.start_id = 0;
  t.data_id = 3;
  t.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK_NOTHROW(ValidateTopology(t));

  Topology disconnected = t;
  disconnected.edges = {{0, 1}};
  CHECK_THROWS_AS(ValidateTopology(disconnected), ContractError);

  Topology self_loop = t;
  self_loop.edges.insert({1, 1});
  CHECK_THROWS_AS(ValidateTopology(self_loop), ContractError);

  Topology same_special = t;
  same_special.data_id = 0;
  CHECK_THROWS_AS(ValidateTopology(same_special), ContractError);

  Topology bad_edge = t;
  bad_edge.edges.insert({2, 9});
  CHECK_THROWS_AS(ValidateTopology(bad_edge), ContractError);
}

TEST_CASE("new game initial state") {
  const ScenarioSpec spec3 = BuildScenario(3);
  const GameState state = NewGame(spec3, 100);
  for (const auto& row : state.attack) {
    for (int v : row) CHECK(v == 0);
  }
  for (NodeId n = 1; n <= 3; ++n) {
    CHECK(state.defense[n] == std::vector<int>{1, 1, 1, 1, 1});
  }
  CHECK(state.compromised == std::set<NodeId>{0});
  CHECK(state.compromised.size() == 1);
  CHECK(state.reconned.empty());
  CHECK(state.round == 0);
  CHECK(state.status == GameStatus::kOngoing);

  const GameState s1 = NewGame(BuildScenario(1), 100);
  CHECK(s1.defense[s1.topology.data_id] == std::vector<int>{5, 9, 8, 1, 1});
}

TEST_CASE("new game rejects malformed specs") {
  ScenarioSpec bad = BuildScenario(1);
  bad.initial_defense[1][0] = 12;  // > w
  CHECK_THROWS_AS(NewGame(bad, 100), ContractError);

  ScenarioSpec wrong_shape = BuildScenario(1);
  wrong_shape.initial_defense[2].push_back(0);
  CHECK_THROWS_AS(NewGame(wrong_shape, 100), ContractError);
}

TEST_CASE("visibility closure") {
  const GameState initial = NewGame(BuildScenario(1), 100);
  CHECK(VisibleNodes(initial) == std::set<NodeId>{0, 1, 2});

  GameState mid = initial;
  mid.compromised.insert(1);
  CHECK(VisibleNodes(mid) == std::set<NodeId>{0, 1, 2, 3});

  // Start with no neighbors: only the start node itself is visible.
  GameState isolated = initial;
  isolated.topology.edges.clear();
  CHECK(VisibleNodes(isolated) == std::set<NodeId>{0});
}

TEST_CASE("legal action enumeration") {
  const GameState initial = NewGame(BuildScenario(1), 100);

  // 3 recons (start and both intermediates) + 2 * 4 attacks.
  const auto attacker_actions = LegalAttackerActions(initial);
  CHECK(attacker_actions.size() == 11);
  int recon_count = 0;
  for (const auto& a : attacker_actions) {
    if (a.kind == AttackerAction::Kind::kRecon) ++recon_count;
    CHECK(a.node != 3);  // data not visible yet
    if (a.kind == AttackerAction::Kind::kAttack) CHECK(a.node != 0);
  }
  CHECK(recon_count == 3);

  const auto defender_actions = LegalDefenderActions(initial);
  CHECK(defender_actions.size() == 15);  // (|N|-1) * (m+1)
  for (const auto& d : defender_actions) CHECK(d.node != 0);

  // All nodes visible, none newly compromised: 3 attackable nodes * 4 types.
  const GameState star = NewGame(StarScenario(), 100);
  const auto star_actions = LegalAttackerActions(star);
  int attack_count = 0;
  for (const auto& a : star_actions) {
    if (a.kind == AttackerAction::Kind::kAttack) ++attack_count;
  }
  CHECK(attack_count == 12);

  // Two-node graph with m = 1: defend + monitor on the one defender node.
  const GameState tiny = NewGame(TwoNodeScenario(1, 1), 100);
  CHECK(LegalDefenderActions(tiny).size() == 2);

  // Terminal states admit nothing.
  GameState done = initial;
  done.status = GameStatus::kDefenderWin;
  CHECK(LegalAttackerActions(done).empty());
  CHECK(LegalDefenderActions(done).empty());
}

TEST_CASE("legal list always matches the rule-based recount") {
  Rng rng(99);
  for (int game = 0; game < 30; ++game) {
    GameState state = NewGame(BuildScenario(1 + game % 3), 40);
    while (!state.IsTerminal()) {
      const auto attacker_actions = LegalAttackerActions(state);
      CHECK(static_cast<int>(attacker_actions.size()) ==
            RecountAttackerActions(state));
      CHECK(LegalDefenderActions(state).size() ==
            static_cast<std::size_t>((state.topology.node_count - 1) *
                                     (state.constants.attack_type_count + 1)));
      for (const auto& a : attacker_actions) CHECK(IsLegal(state, a));
      const auto defender_actions = LegalDefenderActions(state);
      const auto attack =
          attacker_actions[rng.UniformInt(attacker_actions.size())];
      const auto defend =
          defender_actions[rng.UniformInt(defender_actions.size())];
      state = Step(state, defend, attack, rng).next_state;
    }
  }
}

TEST_CASE("detection probability formula") {
  GameState state = NewGame(BuildScenario(1), 100);
  CHECK(DetectionProbability(state, 1) == doctest::Approx(0.1));  // attr 1, w 9
  state.defense[2][4] = 0;
  CHECK(DetectionProbability(state, 2) == doctest::Approx(0.0));
  state.defense[3][4] = 9;
  CHECK(DetectionProbability(state, 3) == doctest::Approx(0.9));
  CHECK_THROWS_AS(DetectionProbability(state, 17), ContractError);
}

TEST_CASE("step compromise uses strict inequality against post-defense values") {
  Rng rng(7);
  GameState state = NewGame(BuildScenario(3), 100);

  // First attack equalizes at the defense value: no compromise.
  StepResult r1 = Step(state, DefenderAction::Defend(2, 0),
                       AttackerAction::Attack(1, 0), rng);
  CHECK(r1.next_state.attack[1][0] == 1);
  CHECK(r1.compromised_nodes.empty());
  if (!r1.next_state.IsTerminal()) {
    // Second attack exceeds 1 and compromises the node.
    StepResult r2 = Step(r1.next_state, DefenderAction::Defend(2, 0),
                         AttackerAction::Attack(1, 0), rng);
    CHECK(r2.next_state.attack[1][0] == 2);
    CHECK(r2.compromised_nodes == std::vector<NodeId>{1});
    CHECK(r2.detected == false);  // success never triggers detection
    CHECK(r2.next_state.status == GameStatus::kOngoing);
    CHECK(r2.attacker_reward == 0);
  }

  // The defender's increment lands before the attack resolves: defending the
  // attacked attribute keeps the node safe at equal values.
  GameState contested = NewGame(BuildScenario(3), 100);
  contested.attack[1][0] = 1;  // one prior attack
  StepResult r3 = Step(contested, DefenderAction::Defend(1, 0),
                       AttackerAction::Attack(1, 0), rng);
  CHECK(r3.next_state.attack[1][0] == 2);
  CHECK(r3.next_state.defense[1][0] == 2);
  CHECK(r3.compromised_nodes.empty());
}

TEST_CASE("attacker win on data node") {
  Rng rng(3);
  GameState state = NewGame(BuildScenario(3), 100);
  state.compromised.insert(1);  // data visible
  state.attack[3][2] = 1;
  const StepResult result = Step(state, DefenderAction::Monitor(2),
                                 AttackerAction::Attack(3, 2), rng);
  CHECK(result.next_state.status == GameStatus::kAttackerWin);
  CHECK(result.attacker_reward == 1);
  CHECK(result.defender_reward == -1);
  CHECK(result.detected == false);
  CHECK(result.next_state.compromised.count(3) == 1);
}

TEST_CASE("recon never consumes detection randomness") {
  GameState state = NewGame(BuildScenario(3), 100);
  Rng rng_a(42);
  Rng rng_b(42);
  const StepResult result = Step(state, DefenderAction::Monitor(1),
                                 AttackerAction::Recon(1), rng_a);
  CHECK(result.detected == false);
  CHECK(result.next_state.reconned == std::set<NodeId>{1});
  // The rng stream was untouched by the recon step.
  CHECK(rng_a.NextUint64() == rng_b.NextUint64());
}

TEST_CASE("step rejects illegal actions and terminal states") {
  Rng rng(1);
  GameState state = NewGame(BuildScenario(1), 100);
  // Data node is not visible initially.
  CHECK_THROWS_AS(Step(state, DefenderAction::Monitor(1),
                       AttackerAction::Attack(3, 0), rng),
                  ContractError);
  // Defender never acts on the start node.
  CHECK_THROWS_AS(Step(state, DefenderAction::Defend(0, 0),
                       AttackerAction::Recon(0), rng),
                  ContractError);
  state.status = GameStatus::kDraw;
  CHECK_THROWS_AS(Step(state, DefenderAction::Monitor(1),
                       AttackerAction::Recon(0), rng),
                  ContractError);
}

TEST_CASE("attribute saturation at w") {
  Rng rng(5);
  GameState state = NewGame(TwoNodeScenario(1, 9), 1000);
  // Monitor the single defender node every round: detection saturates at 9.
  for (int i = 0; i < 15 && !state.IsTerminal(); ++i) {
    state = Step(state, DefenderAction::Monitor(1), AttackerAction::Recon(0),
                 rng)
                .next_state;
  }
  CHECK(state.defense[1][1] == 9);

  // Attack values saturate too (defense 9 is impenetrable).
  GameState attacked = NewGame(TwoNodeScenario(1, 9), 10000);
  Rng rng2(11);
  while (!attacked.IsTerminal() && attacked.round < 30) {
    attacked = Step(attacked, DefenderAction::Defend(1, 0),
                    AttackerAction::Attack(1, 0), rng2)
                   .next_state;
  }
  CHECK(attacked.attack[1][0] <= 9);
}

TEST_CASE("draw at max rounds") {
  Rng rng(2);
  GameState state = NewGame(BuildScenario(1), 5);
  while (!state.IsTerminal()) {
    state = Step(state, DefenderAction::Monitor(1), AttackerAction::Recon(0),
                 rng)
                .next_state;
  }
  CHECK(state.round == 5);
  CHECK(state.status == GameStatus::kDraw);
}

TEST_CASE("zero-sum rewards over random playouts") {
  Rng rng(123);
  for (int game = 0; game < 50; ++game) {
    GameState state = NewGame(BuildScenario(1 + game % 3), 60);
    int attacker_total = 0, defender_total = 0;
    std::set<NodeId> prev_compromised = state.compromised;
    std::set<NodeId> prev_reconned = state.reconned;
    std::set<NodeId> prev_visible = VisibleNodes(state);
    while (!state.IsTerminal()) {
      const auto attacks = LegalAttackerActions(state);
      const auto defends = LegalDefenderActions(state);
      const StepResult result =
          Step(state, defends[rng.UniformInt(defends.size())],
               attacks[rng.UniformInt(attacks.size())], rng);
      CHECK(result.attacker_reward + result.defender_reward == 0);
      if (!result.next_state.IsTerminal()) {
        CHECK(result.attacker_reward == 0);
        CHECK(result.defender_reward == 0);
      }
      state = result.next_state;
      // Monotone growth of knowledge and control.
      for (NodeId n : prev_compromised) CHECK(state.compromised.count(n) == 1);
      for (NodeId n : prev_reconned) CHECK(state.reconned.count(n) == 1);
      const auto visible = VisibleNodes(state);
      for (NodeId n : prev_visible) CHECK(visible.count(n) == 1);
      prev_compromised = state.compromised;
      prev_reconned = state.reconned;
      prev_visible = visible;
      // Saturation invariant.
      for (const auto& row : state.attack) {
        for (int v : row) CHECK((v >= 0 && v <= 9));
      }
      for (const auto& row : state.defense) {
        for (int v : row) CHECK((v >= 0 && v <= 9));
      }
    }
    CHECK(attacker_total + defender_total == 0);
  }
}

TEST_CASE("detection frequency matches v/(w+1)") {
  // Repeated failed attacks on a node with detection attribute v; the
  // empirical detection rate must sit within 3 standard errors of v/10.
  for (int v : {1, 5, 9}) {
    const int trials = 100000;
    int detected = 0;
    Rng rng(1000 + v);
    for (int t = 0; t < trials; ++t) {
      GameState state = NewGame(TwoNodeScenario(1, 9), 100);
      state.defense[1][1] = v;
      const StepResult result = Step(state, DefenderAction::Defend(1, 0),
                                     AttackerAction::Attack(1, 0), rng);
      CHECK(result.compromised_nodes.empty());
      if (result.detected) ++detected;
    }
    const double p = v / 10.0;
    const double se = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(detected / static_cast<double>(trials) - p) <= 3 * se);
  }
}

TEST_CASE("attacker observation encoding") {
  const ScenarioSpec spec1 = BuildScenario(1);
  GameState state = NewGame(spec1, 100);
  const auto obs = AttackerObservation(state);
  CHECK(obs.size() == 44);  // |N| * (2m + 3)

  // Initially nothing is reconned: every defender-owned node's defense slots
  // carry the -1 sentinel and every attack slot is 0. The start node is
  // compromised from round 0, so its own (all-zero) defense row is visible.
  for (int n = 0; n < 4; ++n) {
    const int base = n * 11;
    for (int j = 0; j < 4; ++j) CHECK(obs[base + j] == 0.0);
    for (int j = 4; j < 9; ++j) CHECK(obs[base + j] == (n == 0 ? 0.0 : -1.0));
  }
  // Visibility flags: start, n1, n2 visible; data not. Compromised: start.
  CHECK(obs[0 * 11 + 9] == 1.0);
  CHECK(obs[1 * 11 + 9] == 1.0);
  CHECK(obs[2 * 11 + 9] == 1.0);
  CHECK(obs[3 * 11 + 9] == 0.0);
  CHECK(obs[0 * 11 + 10] == 1.0);
  CHECK(obs[1 * 11 + 10] == 0.0);

  // After recon of n1 its defense row [9,1,7,8,1] appears scaled by 1/9.
  state.reconned.insert(1);
  const auto obs2 = AttackerObservation(state);
  const double expected[] = {9.0 / 9, 1.0 / 9, 7.0 / 9, 8.0 / 9, 1.0 / 9};
  for (int j = 0; j < 5; ++j) {
    CHECK(obs2[1 * 11 + 4 + j] == doctest::Approx(expected[j]).epsilon(1e-12));
  }
}

TEST_CASE("defender observation encoding") {
  const GameState state3 = NewGame(BuildScenario(3), 100);
  const auto obs = DefenderObservation(state3);
  CHECK(obs.size() == 15);  // (|N|-1) * (m+1)
  for (double v : obs) CHECK(v == doctest::Approx(1.0 / 9));

  // A single defend action raises exactly one entry by 1/w.
  Rng rng(4);
  const GameState next =
      Step(state3, DefenderAction::Defend(2, 1), AttackerAction::Recon(0), rng)
          .next_state;
  const auto obs2 = DefenderObservation(next);
  int changed = 0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs2[i] != obs[i]) {
      ++changed;
      CHECK(obs2[i] == doctest::Approx(obs[i] + 1.0 / 9));
    }
  }
  CHECK(changed == 1);
}

TEST_CASE("canonical json round trip and markov replay") {
  Rng rng(77);
  GameState state = NewGame(BuildScenario(2), 100);
  // Advance to a nontrivial mid-game state.
  for (int i = 0; i < 6 && !state.IsTerminal(); ++i) {
    const auto attacks = LegalAttackerActions(state);
    const auto defends = LegalDefenderActions(state);
    state = Step(state, defends[rng.UniformInt(defends.size())],
                 attacks[rng.UniformInt(attacks.size())], rng)
                .next_state;
  }
  if (state.IsTerminal()) return;

  const nlohmann::ordered_json j = GameStateToJson(state);
  // Fixed field order.
  auto it = j.begin();
  CHECK(it.key() == "constants");
  CHECK((++it).key() == "topology");
  CHECK((++it).key() == "attack");
  CHECK((++it).key() == "defense");
  CHECK((++it).key() == "compromised");
  CHECK((++it).key() == "reconned");
  CHECK((++it).key() == "round");
  CHECK((++it).key() == "status");

  const GameState restored = GameStateFromJson(j);
  CHECK(GameStateToJson(restored).dump() == j.dump());

  // Applying the same actions with the same rng stream to the restored
  // state yields a bit-identical step result.
  const auto attacks = LegalAttackerActions(state);
  const auto defends = LegalDefenderActions(state);
  Rng rng_a(555);
  Rng rng_b(555);
  const StepResult from_original =
      Step(state, defends[0], attacks[attacks.size() - 1], rng_a);
  const StepResult from_restored =
      Step(restored, defends[0], attacks[attacks.size() - 1], rng_b);
  CHECK(GameStateHash(from_original.next_state) ==
        GameStateHash(from_restored.next_state));
  CHECK(from_original.attacker_reward == from_restored.attacker_reward);
  CHECK(from_original.detected == from_restored.detected);
}

TEST_CASE("identical seeds give identical trajectories") {
  const auto play = [](std::uint64_t seed) {
    Rng rng(seed);
    GameState state = NewGame(BuildScenario(3), 50);
    std::vector<std::uint64_t> hashes;
    while (!state.IsTerminal()) {
      const auto attacks = LegalAttackerActions(state);
      const auto defends = LegalDefenderActions(state);
      state = Step(state, defends[rng.UniformInt(defends.size())],
                   attacks[rng.UniformInt(attacks.size())], rng)
                  .next_state;
      hashes.push_back(GameStateHash(state));
    }
    return hashes;
  };
  CHECK(play(2024) == play(2024));
  CHECK(play(2024) != play(2025));
}

}  // namespace
}  // namespace secgame
