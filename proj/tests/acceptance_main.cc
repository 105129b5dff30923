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
// Acceptance suite. Runs the listed criteria (all by default) and prints one
// PASS/FAIL line per criterion with the measured values. Training-based
// criteria cache their curves under ./acceptance_cache so reruns and
// criteria sharing the same runs (1 and 2) do not retrain; the runs are
// deterministic, so cached results equal fresh ones.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "secgame/experiment.h"

namespace secgame {
namespace {

namespace fs = std::filesystem;

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

constexpr int kTrainIterations = 500;
constexpr int kFinalWindow = 50;
const std::vector<std::uint64_t> kSeeds = {1, 2, 3};

fs::path CacheDir() { return fs::path("acceptance_cache"); }

// ---------------------------------------------------------------------------
// Training-run plumbing for criteria 1-3 and 8.

RunConfig StandardRun(int scenario_id, Algo algo, StaticRole static_role,
                      std::uint64_t seed, int iterations) {
  RunConfig config;
  config.scenario = BuildScenario(scenario_id);
  config.attacker_algo = algo;
  config.defender_algo = algo;
  config.static_role = static_role;
  config.iterations = iterations;
  config.seed = seed;
  config.hp = Hyperparams{};  // paper-faithful defaults, batch 2000
  config.eval_games = 100;
  config.permute = PermuteMode::kOff;
  config.record_wallclock = true;
  return config;
}

TrainingCurve CachedRun(const std::string& tag, RunConfig config) {
  const fs::path path = CacheDir() / (tag + ".csv");
  if (fs::exists(path)) return LoadCurveCsv(path.string());
  std::cerr << "  [running] " << tag << " (" << config.iterations
            << " iterations)" << std::endl;
  fs::create_directories(CacheDir());
  const fs::path partial = CacheDir() / (tag + ".csv.partial");
  {
    std::ofstream out(partial);
    out << kCurveCsvHeader << "\n" << std::flush;
    config.on_row = [&out, &tag](const TrainingRow& row) {
      out << RowToCsv(row) << std::flush;
      if (row.iteration % 50 == 0) {
        std::cerr << "    " << tag << " iteration " << row.iteration
                  << ", attacker win ratio " << row.attacker_win_ratio
                  << std::endl;
      }
    };
    const TrainingCurve curve = config.static_role == StaticRole::kNone
                                    ? TrainSelfplay(config)
                                    : TrainVsStatic(config);
    (void)curve;
  }
  fs::rename(partial, path);
  return LoadCurveCsv(path.string());
}

double FinalWindowMean(const std::vector<TrainingCurve>& curves, int window) {
  double sum = 0.0;
  int count = 0;
  for (const TrainingCurve& curve : curves) {
    const std::size_t start =
        curve.size() > static_cast<std::size_t>(window) ? curve.size() - window
                                                        : 0;
    for (std::size_t i = start; i < curve.size(); ++i) {
      sum += curve[i].attacker_win_ratio;
      ++count;
    }
  }
  return sum / count;
}

std::vector<TrainingCurve> StaticRuns(const std::string& tag_prefix,
                                      int scenario_id, Algo algo,
                                      StaticRole static_role) {
  std::vector<TrainingCurve> curves;
  for (std::uint64_t seed : kSeeds) {
    const std::string tag = tag_prefix + "-seed" + std::to_string(seed);
    curves.push_back(CachedRun(
        tag, StandardRun(scenario_id, algo, static_role, seed,
                         kTrainIterations)));
  }
  return curves;
}

// ---------------------------------------------------------------------------
// Criterion 1: attacker PPO-AR vs DefendMinimal on scenario 3.

CriterionResult Criterion1() {
  const auto curves =
      StaticRuns("c1-ppoar-s3", 3, Algo::kPpoAr, StaticRole::kDefender);
  const double mean = FinalWindowMean(curves, kFinalWindow);
  std::ostringstream detail;
  detail << "attacker PPO-AR vs DefendMinimal, scenario 3: mean final-"
         << kFinalWindow << " win ratio " << mean << " (required >= 0.90; "
         << "note: every win needs >= 2 failed equalizing attacks, each "
         << "detected w.p. >= 0.1, so no attacker can exceed 0.81, and a "
         << "scripted optimal line scores ~0.75 against DefendMinimal)";
  return {mean >= 0.90, detail.str()};
}

// ---------------------------------------------------------------------------
// Criterion 2: PPO-AR >= PPO >= REINFORCE at 500 iterations (gap >= -0.02).

CriterionResult Criterion2() {
  const double ppo_ar = FinalWindowMean(
      StaticRuns("c1-ppoar-s3", 3, Algo::kPpoAr, StaticRole::kDefender),
      kFinalWindow);
  const double ppo = FinalWindowMean(
      StaticRuns("c2-ppo-s3", 3, Algo::kPpo, StaticRole::kDefender),
      kFinalWindow);
  const double reinforce = FinalWindowMean(
      StaticRuns("c2-reinforce-s3", 3, Algo::kReinforce, StaticRole::kDefender),
      kFinalWindow);
  const bool pass = ppo_ar >= ppo - 0.02 && ppo >= reinforce - 0.02;
  std::ostringstream detail;
  detail << "final-window win ratios: PPO-AR " << ppo_ar << ", PPO " << ppo
         << ", REINFORCE " << reinforce << " (each gap allowed >= -0.02)";
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// Criterion 3: defender PPO-AR vs AttackMaximal on scenario 1.

CriterionResult Criterion3() {
  const auto curves =
      StaticRuns("c3-ppoar-s1-def", 1, Algo::kPpoAr, StaticRole::kAttacker);
  const double mean = FinalWindowMean(curves, kFinalWindow);
  std::ostringstream detail;
  detail << "defender PPO-AR vs AttackMaximal, scenario 1: mean final-"
         << kFinalWindow << " attacker win ratio " << mean
         << " (required <= 0.25)";
  return {mean <= 0.25, detail.str()};
}

// ---------------------------------------------------------------------------
// Criterion 4: detection-model fidelity over 10^6 failed attacks.

CriterionResult Criterion4() {
  std::ostringstream detail;
  bool pass = true;
  detail << "empirical failed-attack detection rates (10^6 trials each):";
  for (int v : {0, 1, 5, 9}) {
    ScenarioSpec spec;
    spec.topology.node_count = 2;
    spec.topology.start_id = 0;
    spec.topology.data_id = 1;
    spec.topology.edges = {{0, 1}};
    spec.constants = {1, 9};
    spec.initial_defense = {{0, 0}, {9, v}};
    spec.initial_attack = {{0}, {0}};

    const int trials = 1000000;
    int detected = 0;
    Rng rng(4000 + v);
    for (int t = 0; t < trials; ++t) {
      GameState state = NewGame(spec, 10);
      // Attack value saturates below the defense of 9: always a failed
      // attack, so every trial draws exactly one detection Bernoulli.
      const StepResult result = Step(state, DefenderAction::Defend(1, 0),
                                     AttackerAction::Attack(1, 0), rng);
      if (result.detected) ++detected;
    }
    const double p = v / 10.0;
    const double rate = detected / static_cast<double>(trials);
    const double se = std::sqrt(p * (1 - p) / trials);
    const bool ok = v == 0 ? detected == 0 : std::abs(rate - p) <= 3 * se;
    pass = pass && ok;
    detail << " v=" << v << ": " << rate << (ok ? "" : " [out of band]");
  }
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// Criterion 5: numerics suite.

bool GradCheck(NetParams& params, const NetParams& analytic,
               const std::function<double()>& loss_fn, std::string& error) {
  auto views = TensorViews(params);
  auto grad_views = TensorViews(analytic);
  for (std::size_t t = 0; t < views.size(); ++t) {
    for (Eigen::Index i = 0; i < views[t].size; ++i) {
      double& p = views[t].data[i];
      const double original = p;
      p = original + 1e-5;
      const double plus = loss_fn();
      p = original - 1e-5;
      const double minus = loss_fn();
      p = original;
      const double numeric = (plus - minus) / 2e-5;
      const double analytic_grad = grad_views[t].data[i];
      if (std::abs(numeric) < 1e-9 && std::abs(analytic_grad) < 1e-9) continue;
      const double rel = std::abs(numeric - analytic_grad) /
                         std::max({std::abs(numeric), std::abs(analytic_grad),
                                   1e-6});
      if (rel >= 1e-4) {
        std::ostringstream oss;
        oss << "gradient mismatch: numeric " << numeric << " analytic "
            << analytic_grad << " rel " << rel;
        error = oss.str();
        return false;
      }
    }
  }
  return true;
}

// Small synthetic batch over a 5-action flat space (mirrors real rollouts:
// masks, behavior log-probs from a different net, two episodes).
RolloutBatch SyntheticFlatBatch(const ActorCriticNet& behavior, Rng& rng,
                                int samples) {
  RolloutBatch batch;
  const int actions = behavior.action_count;
  batch.flat_action_count = actions;
  batch.node_count = 1;
  batch.type_count = actions;
  for (int i = 0; i < samples; ++i) {
    std::vector<double> obs(behavior.input_dim);
    for (double& v : obs) v = rng.Uniform() * 2 - 1;
    std::vector<std::uint8_t> mask(actions, 0);
    int legal = 0;
    while (legal < 2) {
      legal = 0;
      for (int k = 0; k < actions; ++k) {
        mask[k] = rng.Bernoulli(0.75) ? 1 : 0;
        legal += mask[k];
      }
    }
    const NetOutput out = ForwardOne(
        behavior, Eigen::Map<const Eigen::VectorXd>(obs.data(), obs.size()));
    const MaskedCategorical dist = MaskedSoftmax(out.logits, mask);
    const int action = SampleCategorical(dist.probs, rng);
    batch.observations.push_back(obs);
    batch.actions.push_back(action);
    batch.node_actions.push_back(0);
    batch.type_actions.push_back(action);
    batch.flat_masks.push_back(mask);
    batch.node_masks.push_back({1});
    batch.type_masks.push_back(mask);
    batch.log_probs.push_back(dist.LogProb(action));
    batch.rewards.push_back((rng.UniformInt(3) - 1) * 1.0);
    batch.values.push_back(out.value);
    const bool done = i == samples - 1 || i == samples / 2;
    batch.dones.push_back(done ? 1 : 0);
    batch.truncated.push_back(0);
    batch.episode_ids.push_back(i <= samples / 2 ? 0 : 1);
  }
  return batch;
}

CriterionResult Criterion5() {
  std::string error;

  // Gradient-vs-finite-difference for the three losses, randomized
  // 5-sample batches.
  {
    Rng rng(501);
    ActorCriticNet net = MakeNet(6, 5, true, Activation::kSoftplus, 8, rng);
    ActorCriticNet behavior = MakeNet(6, 5, true, Activation::kSoftplus, 8, rng);
    RolloutBatch batch = SyntheticFlatBatch(behavior, rng, 5);

    NetParams grads = ZeroGrads(net);
    ReinforceLoss(net, batch, 0.999, &grads);
    if (!GradCheck(net.params, grads, [&]() {
          return ReinforceLoss(net, batch, 0.999, nullptr).total;
        }, error)) {
      return {false, "REINFORCE " + error};
    }

    Hyperparams hp;
    const AdvantageEstimates est =
        ComputeGaeForBatch(batch, hp.gamma, hp.gae_lambda);
    std::vector<double> advantages = est.advantages;
    NormalizeAdvantages(advantages);
    grads = ZeroGrads(net);
    PpoLoss(net, batch, hp, advantages, est.value_targets, &grads);
    if (!GradCheck(net.params, grads, [&]() {
          return PpoLoss(net, batch, hp, advantages, est.value_targets,
                         nullptr)
              .total;
        }, error)) {
      return {false, "PPO " + error};
    }
  }
  {
    Rng rng(502);
    AutoregressiveNets nets;
    nets.node_net = MakeNet(5, 3, true, Activation::kSoftplus, 8, rng);
    nets.type_net = MakeNet(8, 4, false, Activation::kSoftplus, 8, rng);
    AutoregressiveNets behavior;
    behavior.node_net = MakeNet(5, 3, true, Activation::kSoftplus, 8, rng);
    behavior.type_net = MakeNet(8, 4, false, Activation::kSoftplus, 8, rng);

    RolloutBatch batch;
    batch.flat_action_count = 12;
    batch.node_count = 3;
    batch.type_count = 4;
    for (int i = 0; i < 5; ++i) {
      std::vector<double> obs(5);
      for (double& v : obs) v = rng.Uniform() * 2 - 1;
      const std::vector<std::uint8_t> node_mask = {1, 1, 1};
      const std::vector<std::vector<std::uint8_t>> type_masks = {
          {1, 1, 1, 0}, {0, 1, 1, 1}, {1, 1, 1, 1}};
      const SampledAutoregressive s =
          ActAutoregressive(behavior, obs, node_mask, type_masks, rng);
      batch.observations.push_back(obs);
      batch.actions.push_back(s.node * 4 + s.type);
      batch.node_actions.push_back(s.node);
      batch.type_actions.push_back(s.type);
      batch.flat_masks.push_back(std::vector<std::uint8_t>(12, 1));
      batch.node_masks.push_back(node_mask);
      batch.type_masks.push_back(type_masks[s.node]);
      batch.log_probs.push_back(s.log_prob);
      batch.rewards.push_back((rng.UniformInt(3) - 1) * 1.0);
      batch.values.push_back(s.value);
      const bool done = i == 4 || i == 2;
      batch.dones.push_back(done ? 1 : 0);
      batch.truncated.push_back(0);
      batch.episode_ids.push_back(i <= 2 ? 0 : 1);
    }

    Hyperparams hp;
    const AdvantageEstimates est =
        ComputeGaeForBatch(batch, hp.gamma, hp.gae_lambda);
    std::vector<double> advantages = est.advantages;
    NormalizeAdvantages(advantages);
    NetParams node_grads = ZeroGrads(nets.node_net);
    NetParams type_grads = ZeroGrads(nets.type_net);
    PpoArLoss(nets, batch, hp, advantages, est.value_targets, &node_grads,
              &type_grads);
    const auto loss_fn = [&]() {
      return PpoArLoss(nets, batch, hp, advantages, est.value_targets,
                       nullptr, nullptr)
          .total;
    };
    if (!GradCheck(nets.node_net.params, node_grads, loss_fn, error)) {
      return {false, "PPO-AR node net " + error};
    }
    if (!GradCheck(nets.type_net.params, type_grads, loss_fn, error)) {
      return {false, "PPO-AR type net " + error};
    }
  }

  // GAE closed forms at lambda in {0, 1}, exact to 1e-12.
  {
    Rng rng(503);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng.UniformInt(20);
      std::vector<double> rewards(n), values(n);
      for (double& v : rewards) v = rng.Uniform() * 2 - 1;
      for (double& v : values) v = rng.Uniform() * 2 - 1;
      const double gamma = 0.9 + rng.Uniform() * 0.1;
      const auto a0 = GaeAdvantages(rewards, values, 0.0, gamma, 0.0);
      for (std::size_t t = 0; t < n; ++t) {
        const double next_value = t + 1 < n ? values[t + 1] : 0.0;
        if (std::abs(a0[t] - (rewards[t] + gamma * next_value - values[t])) >
            0.0) {
          return {false, "GAE lambda=0 differs from the TD error"};
        }
      }
      const auto a1 = GaeAdvantages(rewards, values, 0.0, gamma, 1.0);
      const auto returns = DiscountedReturns(rewards, gamma);
      for (std::size_t t = 0; t < n; ++t) {
        if (std::abs(a1[t] - (returns[t] - values[t])) > 1e-12) {
          return {false, "GAE lambda=1 differs from returns minus values"};
        }
      }
    }
  }

  // Softmax and joint-distribution normalization to 1e-6.
  {
    Rng rng(504);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd logits(9);
      for (int i = 0; i < 9; ++i) logits(i) = rng.Uniform() * 60 - 30;
      if (std::abs(Softmax(logits).sum() - 1.0) > 1e-6) {
        return {false, "softmax normalization out of tolerance"};
      }
    }
    const ScenarioSpec spec = BuildScenario(1);
    Rng init(505);
    const AutoregressivePolicy policy = MakeAutoregressivePolicy(
        Role::kAttacker, spec.topology, spec.constants, Activation::kSoftplus,
        16, init);
    GameState state = NewGame(spec, 100);
    const auto obs = AttackerObservation(state);
    const auto node_mask = NodeMask(state, Role::kAttacker);
    const auto type_masks = TypeMasks(state, Role::kAttacker);
    const NetOutput node_out = ForwardOne(
        policy.nets().node_net,
        Eigen::Map<const Eigen::VectorXd>(obs.data(), obs.size()));
    const MaskedCategorical node_dist =
        MaskedSoftmax(node_out.logits, node_mask);
    double joint_total = 0.0;
    for (int n = 0; n < 4; ++n) {
      if (!node_mask[n]) continue;
      std::vector<double> type_input = obs;
      type_input.resize(obs.size() + 4, 0.0);
      type_input[obs.size() + n] = 1.0;
      const NetOutput type_out = ForwardOne(
          policy.nets().type_net,
          Eigen::Map<const Eigen::VectorXd>(type_input.data(),
                                            type_input.size()));
      const MaskedCategorical type_dist =
          MaskedSoftmax(type_out.logits, type_masks[n]);
      for (int j = 0; j < 5; ++j) {
        if (type_masks[n][j]) joint_total += node_dist.probs(n) * type_dist.probs(j);
      }
    }
    if (std::abs(joint_total - 1.0) > 1e-6) {
      return {false, "autoregressive joint distribution does not normalize"};
    }
  }

  // Adam first-step hand oracle: g=1 moves the parameter by -lr/(1+eps).
  {
    Rng rng(506);
    ActorCriticNet net = MakeNet(2, 2, true, Activation::kTanh, 4, rng);
    for (auto& view : TensorViews(net.params)) {
      std::fill(view.data, view.data + view.size, 0.0);
    }
    AdamState adam = MakeAdamState(net);
    NetParams grads = ZeroGrads(net);
    grads.fc1.weight(0, 0) = 1.0;
    AdamStep(net, grads, adam, 0.0001);
    const double expected = -0.0001 / (1.0 + 1e-8);
    if (std::abs(net.params.fc1.weight(0, 0) - expected) > 1e-15) {
      return {false, "Adam first step deviates from the hand-computed value"};
    }
  }

  return {true,
          "finite-difference checks (REINFORCE, PPO, PPO-AR), GAE closed "
          "forms, normalizations and the Adam oracle all within tolerance"};
}

// ---------------------------------------------------------------------------
// Criterion 6: game-rule suite.

CriterionResult Criterion6() {
  // Strict-inequality boundary.
  {
    Rng rng(601);
    GameState state = NewGame(BuildScenario(3), 100);
    const StepResult equal = Step(state, DefenderAction::Defend(2, 1),
                                  AttackerAction::Attack(1, 0), rng);
    if (!equal.compromised_nodes.empty()) {
      return {false, "attack equal to defense must not compromise"};
    }
  }
  // Recon never detected (and never consumes randomness).
  {
    GameState state = NewGame(BuildScenario(3), 100);
    state.defense[1][4] = 9;  // maximal detection attribute
    Rng rng_a(602), rng_b(602);
    for (int i = 0; i < 50; ++i) {
      const StepResult result = Step(state, DefenderAction::Defend(1, 0),
                                     AttackerAction::Recon(1), rng_a);
      if (result.detected) return {false, "recon must never be detected"};
      state = result.next_state;
      if (state.IsTerminal()) break;
    }
    if (rng_a.NextUint64() != rng_b.NextUint64()) {
      return {false, "recon consumed detection randomness"};
    }
  }
  // Zero-sum, saturation, monotone visibility/compromise over playouts.
  {
    Rng rng(603);
    for (int game = 0; game < 200; ++game) {
      GameState state = NewGame(BuildScenario(1 + game % 3), 60);
      auto prev_visible = VisibleNodes(state);
      auto prev_compromised = state.compromised;
      while (!state.IsTerminal()) {
        const auto attacks = LegalAttackerActions(state);
        const auto defends = LegalDefenderActions(state);
        const StepResult result =
            Step(state, defends[rng.UniformInt(defends.size())],
                 attacks[rng.UniformInt(attacks.size())], rng);
        if (result.attacker_reward + result.defender_reward != 0) {
          return {false, "rewards are not zero-sum"};
        }
        state = result.next_state;
        for (const auto& row : state.attack) {
          for (int v : row) {
            if (v < 0 || v > 9) return {false, "attack attribute left [0, w]"};
          }
        }
        for (const auto& row : state.defense) {
          for (int v : row) {
            if (v < 0 || v > 9) return {false, "defense attribute left [0, w]"};
          }
        }
        const auto visible = VisibleNodes(state);
        for (NodeId n : prev_visible) {
          if (!visible.count(n)) return {false, "visibility shrank"};
        }
        for (NodeId n : prev_compromised) {
          if (!state.compromised.count(n)) {
            return {false, "compromised set shrank"};
          }
        }
        prev_visible = visible;
        prev_compromised = state.compromised;
      }
    }
  }
  // Action-space sizes: flat 20, autoregressive heads 4 + 5.
  {
    const ScenarioSpec spec = BuildScenario(1);
    if (FlatActionCount(spec.topology, spec.constants) != 20) {
      return {false, "flat action space must have |N|(m+1) = 20 entries"};
    }
    Rng rng(604);
    const AutoregressivePolicy policy = MakeAutoregressivePolicy(
        Role::kAttacker, spec.topology, spec.constants, Activation::kSoftplus,
        8, rng);
    if (policy.nets().node_net.action_count != 4 ||
        policy.nets().type_net.action_count != 5) {
      return {false, "autoregressive heads must be |N| = 4 and m+1 = 5"};
    }
    const GameState state = NewGame(spec, 100);
    if (LegalAttackerActions(state).size() != 11 ||
        LegalDefenderActions(state).size() != 15) {
      return {false, "initial legal-action counts differ from enumeration"};
    }
  }
  return {true,
          "zero-sum, saturation, monotone visibility/compromise, strict "
          "compromise boundary, undetectable recon and the 20 vs 4+5 "
          "action-space split all hold"};
}

// ---------------------------------------------------------------------------
// Criterion 7: byte-identical CSV determinism, including parallel seeds.

CriterionResult Criterion7() {
  ExperimentConfig config;
  config.scenario = "2";
  config.attacker_algo = Algo::kPpoAr;
  config.defender_algo = Algo::kPpoAr;
  config.static_role = StaticRole::kDefender;
  config.iterations = 4;
  config.seeds = {11, 12, 13};
  config.eval_games = 20;
  config.permute = PermuteMode::kRun;
  config.parallelism = 3;  // exercise the parallel-seed path
  config.write_checkpoints = false;
  config.record_wallclock = false;
  config.hp.batch_size = 120;
  config.hp.max_rounds = 30;
  config.hp.hidden_dim = 32;

  const fs::path dir_a = fs::temp_directory_path() / "secgame_acc7_a";
  const fs::path dir_b = fs::temp_directory_path() / "secgame_acc7_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  config.out_dir = dir_a.string();
  RunExperiment(config);
  config.out_dir = dir_b.string();
  RunExperiment(config);

  const auto read = [](const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  for (std::uint64_t seed : config.seeds) {
    const std::string name = "seed-" + std::to_string(seed);
    const std::string a = read(dir_a / name / "curve.csv");
    const std::string b = read(dir_b / name / "curve.csv");
    if (a.empty() || a != b) {
      return {false, "CSV for " + name + " differs between identical runs"};
    }
  }
  const bool summary_equal =
      read(dir_a / "summary.json") == read(dir_b / "summary.json");
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  if (!summary_equal) {
    return {false, "summary.json differs between identical runs"};
  }
  return {true,
          "two identical 3-seed parallel runs produced byte-identical "
          "curve.csv files and summary.json"};
}

// ---------------------------------------------------------------------------
// Criterion 8: self-play mechanics.

CriterionResult Criterion8() {
  // Pool insertion schedule: both current policies enter the pool every
  // increment_iters iterations (the trainer's schedule), so 150 iterations
  // with increment 50 produce 6 snapshots.
  {
    const ScenarioSpec spec = BuildScenario(2);
    Rng init(801);
    const auto attacker =
        MakeFlatPolicy(Role::kAttacker, spec.topology, spec.constants,
                       Activation::kSoftplus, 8, init);
    const auto defender =
        MakeFlatPolicy(Role::kDefender, spec.topology, spec.constants,
                       Activation::kSoftplus, 8, init);
    OpponentPool pool(100000, 0.5);
    for (int iteration = 1; iteration <= 150; ++iteration) {
      if (iteration % Hyperparams{}.pool_increment_iters == 0) {
        pool.Insert(attacker);
        pool.Insert(defender);
      }
    }
    if (pool.size(Role::kAttacker) != 3 || pool.size(Role::kDefender) != 3) {
      return {false, "pool schedule did not yield 2 snapshots per 50 iters"};
    }
    // Frozen snapshots: hashes at insert time match hashes now.
    for (std::size_t i = 0; i < 3; ++i) {
      if (pool.InsertTimeHash(Role::kAttacker, i) !=
          pool.CurrentHash(Role::kAttacker, i)) {
        return {false, "pool snapshot mutated after insertion"};
      }
    }
    // sample_p frequency over 10^4 draws within 3 sigma of 0.5.
    Rng rng(802);
    const int trials = 10000;
    int draws = 0;
    for (int t = 0; t < trials; ++t) {
      if (pool.MaybeSample(Role::kDefender, rng) != nullptr) ++draws;
    }
    const double rate = draws / static_cast<double>(trials);
    if (std::abs(rate - 0.5) > 3 * std::sqrt(0.25 / trials)) {
      return {false, "pool sampling frequency off: " + std::to_string(rate)};
    }
  }

  // A 300-iteration scenario-2 dual-learning run completes without NaN and
  // logs the full curve. No convergence threshold is imposed.
  RunConfig config = StandardRun(2, Algo::kPpoAr, StaticRole::kNone, 1, 300);
  const TrainingCurve curve = CachedRun("c8-selfplay-s2-seed1", config);
  if (curve.size() != 300) {
    return {false, "self-play curve has " + std::to_string(curve.size()) +
                       " rows, expected 300"};
  }
  for (const TrainingRow& row : curve) {
    const double checks[] = {row.attacker_win_ratio, row.defender_win_ratio,
                             row.draw_ratio, row.attacker_policy_loss,
                             row.attacker_value_loss, row.attacker_entropy,
                             row.defender_policy_loss, row.defender_value_loss,
                             row.defender_entropy};
    for (double value : checks) {
      if (!std::isfinite(value)) {
        return {false, "NaN in self-play curve at iteration " +
                           std::to_string(row.iteration)};
      }
    }
  }
  return {true,
          "pool schedule (2 snapshots / 50 iters), frozen-snapshot hashes, "
          "sample frequency within 3 sigma of 0.5, and a NaN-free "
          "300-iteration scenario-2 dual-learning run"};
}

using CriterionFn = CriterionResult (*)();

}  // namespace
}  // namespace secgame

int main(int argc, char** argv) {
  using namespace secgame;
  const std::pair<int, CriterionFn> criteria[] = {
      {1, &Criterion1}, {2, &Criterion2}, {3, &Criterion3}, {4, &Criterion4},
      {5, &Criterion5}, {6, &Criterion6}, {7, &Criterion7}, {8, &Criterion8}};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};

  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    if (std::find(selected.begin(), selected.end(), id) == selected.end()) {
      continue;
    }
    CriterionResult result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << id
              << ": " << result.detail << std::endl;
    if (!result.pass) ++failures;
  }
  return failures;
}
