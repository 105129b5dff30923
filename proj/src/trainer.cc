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

#include "secgame/trainer.h"

#include <chrono>
#include <filesystem>
#include <fstream>

namespace secgame {

namespace {

// Appends one step to an agent's batch. The flat action is decomposed into
// (node, type) so either policy representation can train from the record.
void RecordStep(RolloutBatch& batch, const GameState& state, Role role,
                const Decision& decision, int episode_id) {
  const int type_count = state.constants.attack_type_count + 1;
  batch.observations.push_back(ObservationFor(state, role));
  batch.actions.push_back(decision.flat_action);
  batch.node_actions.push_back(decision.flat_action / type_count);
  batch.type_actions.push_back(decision.flat_action % type_count);
  batch.flat_masks.push_back(FlatActionMask(state, role));
  batch.node_masks.push_back(NodeMask(state, role));
  batch.type_masks.push_back(
      TypeMasks(state, role)[decision.flat_action / type_count]);
  batch.log_probs.push_back(decision.log_prob);
  batch.values.push_back(decision.value);
  batch.episode_ids.push_back(episode_id);
  // rewards/dones are filled after the step resolves.
}

void FinishStep(RolloutBatch& batch, double reward, bool done) {
  batch.rewards.push_back(reward);
  batch.dones.push_back(done ? 1 : 0);
  batch.truncated.push_back(0);
}

std::string FormatIllegalAction(const Policy& policy, int flat_action) {
  return "policy '" + policy.kind() + "' (" + RoleName(policy.role()) +
         ") returned illegal action index " + std::to_string(flat_action);
}

void WriteCheckpoint(const std::string& dir, int iteration,
                     const Policy& attacker, const Policy& defender) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(dir) / ("iter-" + std::to_string(iteration));
  fs::create_directories(base);
  for (const auto& [name, policy] :
       {std::pair<std::string, const Policy*>{"attacker.json", &attacker},
        {"defender.json", &defender}}) {
    std::ofstream out(base / name);
    out << policy->Checkpoint().dump(2) << "\n";
  }
}

struct IterationTimer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

TrainingRow MakeRow(int iteration, const EvalResult& eval, int eval_games,
                    const UpdateReport& attacker_report,
                    const UpdateReport& defender_report, double wallclock) {
  TrainingRow row;
  row.iteration = iteration;
  row.attacker_win_ratio =
      static_cast<double>(eval.attacker_wins) / eval_games;
  row.defender_win_ratio =
      static_cast<double>(eval.defender_wins) / eval_games;
  row.draw_ratio = static_cast<double>(eval.draws) / eval_games;
  row.mean_episode_len = eval.mean_length;
  row.attacker_policy_loss = attacker_report.policy_loss;
  row.attacker_value_loss = attacker_report.value_loss;
  row.attacker_entropy = attacker_report.entropy;
  row.defender_policy_loss = defender_report.policy_loss;
  row.defender_value_loss = defender_report.value_loss;
  row.defender_entropy = defender_report.entropy;
  row.wallclock_s = wallclock;
  return row;
}

UpdateReport StaticReport() {
  UpdateReport report;
  report.policy_loss = report.value_loss = report.entropy = report.grad_norm =
      std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace

std::string StaticRoleName(StaticRole role) {
  switch (role) {
    case StaticRole::kNone: return "none";
    case StaticRole::kAttacker: return "attacker";
    case StaticRole::kDefender: return "defender";
  }
  return "unknown";
}

StaticRole StaticRoleFromName(const std::string& name) {
  if (name == "none") return StaticRole::kNone;
  if (name == "attacker") return StaticRole::kAttacker;
  if (name == "defender") return StaticRole::kDefender;
  throw ContractError("unknown static role: " + name);
}

std::string PermuteModeName(PermuteMode mode) {
  switch (mode) {
    case PermuteMode::kOff: return "off";
    case PermuteMode::kRun: return "run";
    case PermuteMode::kEpisode: return "episode";
  }
  return "unknown";
}

PermuteMode PermuteModeFromName(const std::string& name) {
  if (name == "off") return PermuteMode::kOff;
  if (name == "run") return PermuteMode::kRun;
  if (name == "episode") return PermuteMode::kEpisode;
  throw ContractError("unknown permute mode: " + name);
}

OpponentPool::OpponentPool(std::size_t max_size, double sample_p)
    : max_size_(max_size), sample_p_(sample_p) {
  SECGAME_CHECK_MSG(max_size_ >= 1, "pool max size must be positive");
}

const std::vector<OpponentPool::Entry>& OpponentPool::entries(Role role) const {
  return role == Role::kAttacker ? attackers_ : defenders_;
}

std::vector<OpponentPool::Entry>& OpponentPool::entries(Role role) {
  return role == Role::kAttacker ? attackers_ : defenders_;
}

void OpponentPool::Insert(const Policy& policy) {
  auto& list = entries(policy.role());
  Entry entry;
  entry.policy = policy.Clone();
  entry.hash = PolicyHash(*entry.policy);
  list.push_back(std::move(entry));
  if (list.size() > max_size_) list.erase(list.begin());
}

const Policy* OpponentPool::MaybeSample(Role role, Rng& rng) const {
  const bool use_pool = rng.Bernoulli(sample_p_);
  const auto& list = entries(role);
  if (!use_pool || list.empty()) return nullptr;
  return list[rng.UniformInt(static_cast<int>(list.size()))].policy.get();
}

std::size_t OpponentPool::size(Role role) const {
  return entries(role).size();
}

std::uint64_t OpponentPool::InsertTimeHash(Role role, std::size_t index) const {
  return entries(role).at(index).hash;
}

std::uint64_t OpponentPool::CurrentHash(Role role, std::size_t index) const {
  return PolicyHash(*entries(role).at(index).policy);
}

std::uint64_t PolicyHash(const Policy& policy) {
  return Fnv1aHash(policy.Checkpoint().dump());
}

EvalResult Evaluate(const Policy& attacker, const Policy& defender,
                    const ScenarioSpec& scenario, int n_games,
                    std::uint64_t seed, int max_rounds) {
  SECGAME_CHECK_MSG(n_games >= 1, "need at least one evaluation game");
  EvalResult result;
  long total_rounds = 0;
  for (int game = 0; game < n_games; ++game) {
    const std::uint64_t game_seed = MixSeed(seed, static_cast<std::uint64_t>(game));
    Rng env_rng(MixSeed(game_seed, rng_stream::kEnvironment));
    Rng attacker_rng(MixSeed(game_seed, rng_stream::kAttackerPolicy));
    Rng defender_rng(MixSeed(game_seed, rng_stream::kDefenderPolicy));
    GameState state = NewGame(scenario, max_rounds);
    while (!state.IsTerminal()) {
      const Decision defend = defender.Act(state, defender_rng);
      const Decision attack = attacker.Act(state, attacker_rng);
      const StepResult step =
          Step(state, DecodeDefenderAction(defend.flat_action, state.constants),
               DecodeAttackerAction(attack.flat_action, state.constants),
               env_rng);
      state = step.next_state;
    }
    total_rounds += state.round;
    switch (state.status) {
      case GameStatus::kAttackerWin: ++result.attacker_wins; break;
      case GameStatus::kDefenderWin: ++result.defender_wins; break;
      case GameStatus::kDraw: ++result.draws; break;
      case GameStatus::kOngoing: break;
    }
  }
  result.mean_length = static_cast<double>(total_rounds) / n_games;
  return result;
}

std::pair<RolloutBatch, RolloutBatch> CollectRollout(
    const ScenarioSpec& scenario, const Policy& attacker,
    const Policy& defender, const RolloutOptions& options, Rng& env_rng,
    Rng& attacker_rng, Rng& defender_rng) {
  SECGAME_CHECK_MSG(options.batch_size >= 1, "batch size must be positive");
  SECGAME_CHECK_MSG(!options.permute_each_episode ||
                        options.permute_rng != nullptr,
                    "per-episode permutation needs an rng");

  RolloutBatch attacker_batch;
  RolloutBatch defender_batch;
  const int flat_count = FlatActionCount(scenario.topology, scenario.constants);
  for (RolloutBatch* batch : {&attacker_batch, &defender_batch}) {
    batch->flat_action_count = flat_count;
    batch->node_count = scenario.topology.node_count;
    batch->type_count = scenario.constants.attack_type_count + 1;
  }

  int episode_id = 0;
  while (attacker_batch.size() < static_cast<std::size_t>(options.batch_size)) {
    const ScenarioSpec episode_scenario =
        options.permute_each_episode
            ? PermuteDefenses(scenario, *options.permute_rng)
            : scenario;
    GameState state = NewGame(episode_scenario, options.max_rounds);
    while (!state.IsTerminal()) {
      const Decision defend = defender.Act(state, defender_rng);
      SECGAME_CHECK_MSG(
          FlatActionMask(state, Role::kDefender)[defend.flat_action],
          FormatIllegalAction(defender, defend.flat_action));
      const Decision attack = attacker.Act(state, attacker_rng);
      SECGAME_CHECK_MSG(
          FlatActionMask(state, Role::kAttacker)[attack.flat_action],
          FormatIllegalAction(attacker, attack.flat_action));

      RecordStep(attacker_batch, state, Role::kAttacker, attack, episode_id);
      RecordStep(defender_batch, state, Role::kDefender, defend, episode_id);

      const StepResult step =
          Step(state, DecodeDefenderAction(defend.flat_action, state.constants),
               DecodeAttackerAction(attack.flat_action, state.constants),
               env_rng);
      state = step.next_state;
      FinishStep(attacker_batch, step.attacker_reward, state.IsTerminal());
      FinishStep(defender_batch, step.defender_reward, state.IsTerminal());
    }
    ++episode_id;
  }
  return {std::move(attacker_batch), std::move(defender_batch)};
}

std::unique_ptr<Policy> MakePolicyFromSpec(const std::string& spec, Role role) {
  if (spec == "random") return std::make_unique<RandomPolicy>(role);
  if (spec == "defend-minimal") {
    SECGAME_CHECK_MSG(role == Role::kDefender,
                      "defend-minimal plays the defender");
    return std::make_unique<DefendMinimalPolicy>();
  }
  if (spec == "attack-maximal") {
    SECGAME_CHECK_MSG(role == Role::kAttacker,
                      "attack-maximal plays the attacker");
    return std::make_unique<AttackMaximalPolicy>();
  }
  if (spec == "recon-only") {
    SECGAME_CHECK_MSG(role == Role::kAttacker, "recon-only plays the attacker");
    return std::make_unique<ReconOnlyPolicy>();
  }
  std::ifstream in(spec);
  SECGAME_CHECK_MSG(in.good(), "cannot open policy checkpoint " << spec);
  nlohmann::json j;
  in >> j;
  auto policy = PolicyFromCheckpoint(j);
  SECGAME_CHECK_MSG(policy->role() == role,
                    "checkpoint " << spec << " holds a "
                                  << RoleName(policy->role()) << " policy");
  return policy;
}

UpdateReport Learner::Update(const RolloutBatch& batch,
                             const Hyperparams& hp) {
  if (algo == Algo::kPpoAr) {
    auto* ar = dynamic_cast<AutoregressivePolicy*>(policy.get());
    SECGAME_CHECK_MSG(ar != nullptr, "ppo-ar learner needs an autoregressive policy");
    return UpdateAutoregressivePolicy(ar->nets(), adam_primary, adam_type,
                                      batch, hp);
  }
  auto* flat = dynamic_cast<FlatNeuralPolicy*>(policy.get());
  SECGAME_CHECK_MSG(flat != nullptr, "flat learner needs a flat policy");
  return UpdateFlatPolicy(flat->net(), adam_primary, batch, hp, algo);
}

Learner MakeLearner(Role role, Algo algo, const ScenarioSpec& scenario,
                    const Hyperparams& hp, std::uint64_t init_seed) {
  Learner learner;
  learner.role = role;
  learner.algo = algo;
  Rng init_rng(init_seed);
  if (algo == Algo::kPpoAr) {
    auto policy = std::make_unique<AutoregressivePolicy>(MakeAutoregressivePolicy(
        role, scenario.topology, scenario.constants, hp.activation,
        hp.hidden_dim, init_rng));
    learner.adam_primary = MakeAdamState(policy->nets().node_net);
    learner.adam_type = MakeAdamState(policy->nets().type_net);
    learner.policy = std::move(policy);
  } else {
    auto policy = std::make_unique<FlatNeuralPolicy>(
        MakeFlatPolicy(role, scenario.topology, scenario.constants,
                       hp.activation, hp.hidden_dim, init_rng));
    learner.adam_primary = MakeAdamState(policy->net());
    learner.policy = std::move(policy);
  }
  return learner;
}

namespace {

struct RunContext {
  ScenarioSpec train_scenario;
  ScenarioSpec eval_scenario;
  Rng env_rng;
  Rng attacker_rng;
  Rng defender_rng;
  Rng permute_rng;
};

RunContext MakeRunContext(const RunConfig& config) {
  ValidateHyperparams(config.hp);
  SECGAME_CHECK_MSG(config.iterations >= 1, "iterations must be positive");
  SECGAME_CHECK_MSG(config.eval_games >= 1, "eval_games must be positive");
  RunContext ctx{
      config.scenario,
      config.scenario,
      Rng(MixSeed(config.seed, rng_stream::kEnvironment)),
      Rng(MixSeed(config.seed, rng_stream::kAttackerPolicy)),
      Rng(MixSeed(config.seed, rng_stream::kDefenderPolicy)),
      Rng(MixSeed(config.seed, rng_stream::kPermutation)),
  };
  if (config.permute == PermuteMode::kRun) {
    ctx.train_scenario = PermuteDefenses(config.scenario, ctx.permute_rng);
  }
  if (config.eval_on_permuted) ctx.eval_scenario = ctx.train_scenario;
  return ctx;
}

RolloutOptions MakeRolloutOptions(const RunConfig& config, RunContext& ctx) {
  RolloutOptions options;
  options.batch_size = config.hp.batch_size;
  options.max_rounds = config.hp.max_rounds;
  options.permute_each_episode = config.permute == PermuteMode::kEpisode;
  options.permute_rng = &ctx.permute_rng;
  return options;
}

void MaybeCheckpoint(const RunConfig& config, int iteration,
                     const Policy& attacker, const Policy& defender) {
  if (config.checkpoint_dir.empty()) return;
  const bool due = config.checkpoint_interval > 0 &&
                   iteration % config.checkpoint_interval == 0;
  if (due || iteration == config.iterations) {
    WriteCheckpoint(config.checkpoint_dir, iteration, attacker, defender);
  }
}

}  // namespace

TrainingCurve TrainVsStatic(const RunConfig& config) {
  SECGAME_CHECK_MSG(config.static_role != StaticRole::kNone,
                    "train-vs-static needs a static role");
  RunContext ctx = MakeRunContext(config);
  const RolloutOptions options = MakeRolloutOptions(config, ctx);

  const bool attacker_learns = config.static_role == StaticRole::kDefender;
  const Role learner_role =
      attacker_learns ? Role::kAttacker : Role::kDefender;
  const Role static_role_id =
      attacker_learns ? Role::kDefender : Role::kAttacker;
  std::string static_spec = config.static_policy_spec;
  if (static_spec.empty()) {
    static_spec = attacker_learns ? "defend-minimal" : "attack-maximal";
  }
  std::unique_ptr<Policy> static_policy =
      MakePolicyFromSpec(static_spec, static_role_id);
  Learner learner = MakeLearner(
      learner_role, attacker_learns ? config.attacker_algo : config.defender_algo,
      ctx.train_scenario, config.hp,
      MixSeed(config.seed, attacker_learns ? rng_stream::kAttackerInit
                                           : rng_stream::kDefenderInit));

  const Policy& attacker =
      attacker_learns ? *learner.policy : *static_policy;
  const Policy& defender =
      attacker_learns ? *static_policy : *learner.policy;

  TrainingCurve curve;
  curve.reserve(config.iterations);
  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    IterationTimer timer;
    auto [attacker_batch, defender_batch] =
        CollectRollout(ctx.train_scenario, attacker, defender, options,
                       ctx.env_rng, ctx.attacker_rng, ctx.defender_rng);
    const UpdateReport report = learner.Update(
        attacker_learns ? attacker_batch : defender_batch, config.hp);
    const EvalResult eval = Evaluate(
        attacker, defender, ctx.eval_scenario, config.eval_games,
        MixSeed(MixSeed(config.seed, rng_stream::kEvaluation),
                static_cast<std::uint64_t>(iteration)),
        config.hp.max_rounds);
    const double wallclock =
        config.record_wallclock ? timer.Seconds() : 0.0;
    curve.push_back(MakeRow(iteration, eval, config.eval_games,
                            attacker_learns ? report : StaticReport(),
                            attacker_learns ? StaticReport() : report,
                            wallclock));
    if (config.on_row) config.on_row(curve.back());
    MaybeCheckpoint(config, iteration, attacker, defender);
  }
  return curve;
}

TrainingCurve TrainSelfplay(const RunConfig& config) {
  SECGAME_CHECK_MSG(config.static_role == StaticRole::kNone,
                    "self-play trains both agents");
  RunContext ctx = MakeRunContext(config);
  const RolloutOptions options = MakeRolloutOptions(config, ctx);
  Rng pool_rng(MixSeed(config.seed, rng_stream::kPool));

  Learner attacker = MakeLearner(
      Role::kAttacker, config.attacker_algo, ctx.train_scenario, config.hp,
      MixSeed(config.seed, rng_stream::kAttackerInit));
  Learner defender = MakeLearner(
      Role::kDefender, config.defender_algo, ctx.train_scenario, config.hp,
      MixSeed(config.seed, rng_stream::kDefenderInit));
  OpponentPool pool(config.hp.pool_max_size, config.hp.pool_sample_p);

  TrainingCurve curve;
  curve.reserve(config.iterations);
  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    IterationTimer timer;
    // Each agent collects against a pool snapshot of its opponent with
    // probability sample_p, otherwise against the current opponent.
    const Policy* defender_opponent =
        pool.MaybeSample(Role::kDefender, pool_rng);
    auto [attacker_batch, unused_d] = CollectRollout(
        ctx.train_scenario, *attacker.policy,
        defender_opponent != nullptr ? *defender_opponent : *defender.policy,
        options, ctx.env_rng, ctx.attacker_rng, ctx.defender_rng);
    const Policy* attacker_opponent =
        pool.MaybeSample(Role::kAttacker, pool_rng);
    auto [unused_a, defender_batch] = CollectRollout(
        ctx.train_scenario,
        attacker_opponent != nullptr ? *attacker_opponent : *attacker.policy,
        *defender.policy, options, ctx.env_rng, ctx.attacker_rng,
        ctx.defender_rng);

    const UpdateReport attacker_report =
        attacker.Update(attacker_batch, config.hp);
    const UpdateReport defender_report =
        defender.Update(defender_batch, config.hp);

    if (iteration % config.hp.pool_increment_iters == 0) {
      pool.Insert(*attacker.policy);
      pool.Insert(*defender.policy);
    }

    const EvalResult eval = Evaluate(
        *attacker.policy, *defender.policy, ctx.eval_scenario,
        config.eval_games,
        MixSeed(MixSeed(config.seed, rng_stream::kEvaluation),
                static_cast<std::uint64_t>(iteration)),
        config.hp.max_rounds);
    const double wallclock =
        config.record_wallclock ? timer.Seconds() : 0.0;
    curve.push_back(MakeRow(iteration, eval, config.eval_games,
                            attacker_report, defender_report, wallclock));
    if (config.on_row) config.on_row(curve.back());
    MaybeCheckpoint(config, iteration, *attacker.policy, *defender.policy);
  }
  return curve;
}

}  // namespace secgame
