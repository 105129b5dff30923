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
// Policy-gradient learning rules: discounted returns, generalized advantage
// estimation, REINFORCE, clipped-surrogate PPO for the flat policy and for
// the autoregressive (node, type) policy.

#ifndef SECGAME_RL_H_
#define SECGAME_RL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "secgame/neural.h"
#include "secgame/policies.h"

namespace secgame {

enum class Algo { kReinforce, kPpo, kPpoAr };

std::string AlgoName(Algo algo);
Algo AlgoFromName(const std::string& name);

struct Hyperparams {
  double gamma = 0.999;
  double learning_rate = 0.0001;
  int batch_size = 2000;
  double entropy_coef = 0.001;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  double value_coef = 0.5;
  int ppo_epochs = 4;
  int max_rounds = 100;
  std::size_t pool_max_size = 100000;
  int pool_increment_iters = 50;
  double pool_sample_p = 0.5;
  int hidden_dim = 128;
  Activation activation = Activation::kSoftplus;
};

void ValidateHyperparams(const Hyperparams& hp);
nlohmann::ordered_json HyperparamsToJson(const Hyperparams& hp);
// Missing fields keep their defaults; unknown fields are rejected.
Hyperparams HyperparamsFromJson(const nlohmann::json& j);

// G_t = sum_{k >= t} gamma^(k-t) * r_k over one episode, backward recursion.
std::vector<double> DiscountedReturns(const std::vector<double>& rewards,
                                      double gamma);

// delta_t = r_t + gamma * V_{t+1} - V_t with V_T = bootstrap_value;
// A_t = delta_t + gamma * lambda * A_{t+1}.
std::vector<double> GaeAdvantages(const std::vector<double>& rewards,
                                  const std::vector<double>& values,
                                  double bootstrap_value, double gamma,
                                  double lambda);

// Trajectories of one training iteration for a single agent. Episodes are
// contiguous runs of equal episode_id; the flat action plus its (node, type)
// decomposition and the behavior-time masks are stored so PPO epochs can
// recompute log-probabilities without the original states.
struct RolloutBatch {
  int flat_action_count = 0;
  int node_count = 0;
  int type_count = 0;  // m + 1
  std::vector<std::vector<double>> observations;
  std::vector<int> actions;       // flat index
  std::vector<int> node_actions;  // flat / (m+1)
  std::vector<int> type_actions;  // flat % (m+1)
  std::vector<std::vector<std::uint8_t>> flat_masks;
  std::vector<std::vector<std::uint8_t>> node_masks;
  std::vector<std::vector<std::uint8_t>> type_masks;  // mask of the chosen node
  std::vector<double> log_probs;  // behavior policy
  std::vector<double> rewards;
  std::vector<double> values;  // behavior-time critic estimates
  std::vector<std::uint8_t> dones;
  std::vector<std::uint8_t> truncated;
  std::vector<int> episode_ids;

  std::size_t size() const { return actions.size(); }
};

// [start, end) index ranges of the batch's episodes.
std::vector<std::pair<std::size_t, std::size_t>> EpisodeRanges(
    const RolloutBatch& batch);

// Raw GAE advantages plus value-regression targets (advantage + recorded
// value), computed per episode with terminal bootstrap 0.
struct AdvantageEstimates {
  std::vector<double> advantages;
  std::vector<double> value_targets;
};
AdvantageEstimates ComputeGaeForBatch(const RolloutBatch& batch, double gamma,
                                      double lambda);

// In-place zero-mean unit-variance normalization (population variance).
void NormalizeAdvantages(std::vector<double>& advantages);

// min(ratio * advantage, clip(ratio, 1-eps, 1+eps) * advantage): the
// per-sample PPO surrogate objective (before negation).
double ClippedSurrogate(double ratio, double advantage, double epsilon);

struct LossBreakdown {
  double total = 0.0;
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;     // mean policy entropy (diagnostic)
  double mean_ratio = 1.0;  // PPO only
};

// Monte-Carlo REINFORCE: loss = -mean_t[log pi(a_t | o_t) * G_t]. No critic,
// no entropy bonus. Requires complete episodes. When `grads` is non-null the
// analytic gradients are written there.
LossBreakdown ReinforceLoss(const ActorCriticNet& net,
                            const RolloutBatch& batch, double gamma,
                            NetParams* grads);

// Clipped-surrogate PPO objective with value regression and entropy bonus:
// mean(-min(r*A, clip(r)*A)) + value_coef * mean((V - target)^2)
//   - entropy_coef * mean(H).
LossBreakdown PpoLoss(const ActorCriticNet& net, const RolloutBatch& batch,
                      const Hyperparams& hp,
                      const std::vector<double>& norm_advantages,
                      const std::vector<double>& value_targets,
                      NetParams* grads);

// PPO on the factored policy: log-probabilities are joint over the two
// stages, the entropy is the sum of the stage entropies and the critic lives
// in the node network.
LossBreakdown PpoArLoss(const AutoregressiveNets& nets,
                        const RolloutBatch& batch, const Hyperparams& hp,
                        const std::vector<double>& norm_advantages,
                        const std::vector<double>& value_targets,
                        NetParams* node_grads, NetParams* type_grads);

struct UpdateReport {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double grad_norm = 0.0;
  bool nan_abort = false;
};

// One REINFORCE step or hp.ppo_epochs full-batch PPO passes with ratios
// recomputed each pass. Non-finite losses or gradients abort the iteration
// and leave the previous parameters in place.
UpdateReport UpdateFlatPolicy(ActorCriticNet& net, AdamState& adam,
                              const RolloutBatch& batch, const Hyperparams& hp,
                              Algo algo);
UpdateReport UpdateAutoregressivePolicy(AutoregressiveNets& nets,
                                        AdamState& node_adam,
                                        AdamState& type_adam,
                                        const RolloutBatch& batch,
                                        const Hyperparams& hp);

}  // namespace secgame

#endif  // SECGAME_RL_H_
