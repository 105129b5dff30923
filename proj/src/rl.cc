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

#include "secgame/rl.h"

#include <algorithm>
#include <cmath>

namespace secgame {

namespace {

Eigen::MatrixXd ObservationMatrix(
    const std::vector<std::vector<double>>& observations) {
  SECGAME_CHECK_MSG(!observations.empty(), "empty batch");
  Eigen::MatrixXd m(observations.size(), observations[0].size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    SECGAME_CHECK_MSG(observations[i].size() == observations[0].size(),
                      "ragged observations");
    m.row(i) = Eigen::Map<const Eigen::VectorXd>(observations[i].data(),
                                                 observations[i].size());
  }
  return m;
}

// Per-row masked categorical quantities for a whole batch.
struct BatchDist {
  Eigen::MatrixXd probs;        // zeros at masked entries
  Eigen::VectorXd chosen_logp;  // log-probability of the chosen index
  Eigen::VectorXd entropy;
};

BatchDist MaskedBatchDist(const Eigen::MatrixXd& logits,
                          const std::vector<std::vector<std::uint8_t>>& masks,
                          const std::vector<int>& chosen) {
  const Eigen::Index rows = logits.rows();
  const Eigen::Index cols = logits.cols();
  BatchDist dist;
  dist.probs = Eigen::MatrixXd::Zero(rows, cols);
  dist.chosen_logp.resize(rows);
  dist.entropy.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& mask = masks[i];
    SECGAME_CHECK_MSG(static_cast<Eigen::Index>(mask.size()) == cols,
                      "mask length mismatch");
    double max_logit = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (mask[k] && logits(i, k) > max_logit) max_logit = logits(i, k);
    }
    SECGAME_CHECK_MSG(std::isfinite(max_logit), "row without legal action");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (mask[k]) {
        dist.probs(i, k) = std::exp(logits(i, k) - max_logit);
        sum += dist.probs(i, k);
      }
    }
    const double log_sum = std::log(sum);
    double h = 0.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (mask[k]) {
        dist.probs(i, k) /= sum;
        const double logp = logits(i, k) - max_logit - log_sum;
        h -= dist.probs(i, k) * logp;
      }
    }
    dist.entropy(i) = h;
    SECGAME_CHECK_MSG(chosen[i] >= 0 && chosen[i] < cols && mask[chosen[i]],
                      "chosen action is not legal in its mask");
    dist.chosen_logp(i) = logits(i, chosen[i]) - max_logit - log_sum;
  }
  return dist;
}

// d(loss)/d(logits) for terms of the form
//   sum_i f_i * log p_i(a_i) + sum_i e_i * H_i,
// where p is a masked softmax: f_i * (delta - p) plus the entropy chain
// -e_i * p_k (log p_k + H_i) on legal entries.
Eigen::MatrixXd DistGradient(const BatchDist& dist,
                             const std::vector<std::vector<std::uint8_t>>& masks,
                             const std::vector<int>& chosen,
                             const Eigen::VectorXd& logp_factor,
                             const Eigen::VectorXd& entropy_factor) {
  const Eigen::Index rows = dist.probs.rows();
  const Eigen::Index cols = dist.probs.cols();
  Eigen::MatrixXd dlogits = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (!masks[i][k]) continue;
      const double p = dist.probs(i, k);
      double g = logp_factor(i) * ((k == chosen[i] ? 1.0 : 0.0) - p);
      if (entropy_factor(i) != 0.0 && p > 0.0) {
        g += entropy_factor(i) * (-p * (std::log(p) + dist.entropy(i)));
      }
      dlogits(i, k) = g;
    }
  }
  return dlogits;
}

Eigen::MatrixXd TypeNetInputs(const RolloutBatch& batch) {
  const Eigen::MatrixXd obs = ObservationMatrix(batch.observations);
  Eigen::MatrixXd inputs(obs.rows(), obs.cols() + batch.node_count);
  inputs.leftCols(obs.cols()) = obs;
  inputs.rightCols(batch.node_count).setZero();
  for (Eigen::Index i = 0; i < obs.rows(); ++i) {
    inputs(i, obs.cols() + batch.node_actions[i]) = 1.0;
  }
  return inputs;
}

struct PpoTerms {
  Eigen::VectorXd logp_factor;  // d(policy term)/d(logp_new), per sample
  double policy_term = 0.0;
  double mean_ratio = 0.0;
};

PpoTerms PpoPolicyTerms(const Eigen::VectorXd& new_logp,
                        const std::vector<double>& old_logp,
                        const std::vector<double>& advantages,
                        double clip_epsilon) {
  const Eigen::Index n = new_logp.size();
  PpoTerms terms;
  terms.logp_factor.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ratio = std::exp(new_logp(i) - old_logp[i]);
    const double a = advantages[i];
    const double surr_unclipped = ratio * a;
    const double surr_clipped =
        std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon) * a;
    terms.policy_term += -std::min(surr_unclipped, surr_clipped) * inv_n;
    // Gradient flows only through the unclipped branch when it attains the
    // minimum; d(ratio)/d(logp_new) = ratio.
    terms.logp_factor(i) =
        surr_unclipped <= surr_clipped ? -ratio * a * inv_n : 0.0;
    terms.mean_ratio += ratio * inv_n;
  }
  return terms;
}

}  // namespace

std::string AlgoName(Algo algo) {
  switch (algo) {
    case Algo::kReinforce: return "reinforce";
    case Algo::kPpo: return "ppo";
    case Algo::kPpoAr: return "ppo-ar";
  }
  return "unknown";
}

Algo AlgoFromName(const std::string& name) {
  if (name == "reinforce") return Algo::kReinforce;
  if (name == "ppo") return Algo::kPpo;
  if (name == "ppo-ar") return Algo::kPpoAr;
  throw ContractError("unknown algorithm: " + name);
}

void ValidateHyperparams(const Hyperparams& hp) {
  SECGAME_CHECK_MSG(hp.gamma > 0.0 && hp.gamma <= 1.0, "gamma must be in (0,1]");
  SECGAME_CHECK_MSG(hp.learning_rate > 0.0, "learning rate must be positive");
  SECGAME_CHECK_MSG(hp.batch_size >= 1, "batch size must be positive");
  SECGAME_CHECK_MSG(hp.entropy_coef >= 0.0, "entropy coefficient must be >= 0");
  SECGAME_CHECK_MSG(hp.gae_lambda >= 0.0 && hp.gae_lambda <= 1.0,
                    "gae lambda must be in [0,1]");
  SECGAME_CHECK_MSG(hp.clip_epsilon > 0.0, "clip epsilon must be positive");
  SECGAME_CHECK_MSG(hp.value_coef >= 0.0, "value coefficient must be >= 0");
  SECGAME_CHECK_MSG(hp.ppo_epochs >= 1, "ppo epochs must be positive");
  SECGAME_CHECK_MSG(hp.max_rounds >= 1, "max rounds must be positive");
  SECGAME_CHECK_MSG(hp.pool_max_size >= 1, "pool max size must be positive");
  SECGAME_CHECK_MSG(hp.pool_increment_iters >= 1,
                    "pool increment iterations must be positive");
  SECGAME_CHECK_MSG(hp.pool_sample_p >= 0.0 && hp.pool_sample_p <= 1.0,
                    "pool sample probability must be in [0,1]");
  SECGAME_CHECK_MSG(hp.hidden_dim >= 1, "hidden dim must be positive");
}

nlohmann::ordered_json HyperparamsToJson(const Hyperparams& hp) {
  nlohmann::ordered_json j;
  j["gamma"] = hp.gamma;
  j["learning_rate"] = hp.learning_rate;
  j["batch_size"] = hp.batch_size;
  j["entropy_coef"] = hp.entropy_coef;
  j["gae_lambda"] = hp.gae_lambda;
  j["clip_epsilon"] = hp.clip_epsilon;
  j["value_coef"] = hp.value_coef;
  j["ppo_epochs"] = hp.ppo_epochs;
  j["max_rounds"] = hp.max_rounds;
  j["pool_max_size"] = hp.pool_max_size;
  j["pool_increment_iters"] = hp.pool_increment_iters;
  j["pool_sample_p"] = hp.pool_sample_p;
  j["hidden_dim"] = hp.hidden_dim;
  j["activation"] = ActivationName(hp.activation);
  return j;
}

Hyperparams HyperparamsFromJson(const nlohmann::json& j) {
  Hyperparams hp;
  for (const auto& [key, value] : j.items()) {
    if (key == "gamma") hp.gamma = value.get<double>();
    else if (key == "learning_rate") hp.learning_rate = value.get<double>();
    else if (key == "batch_size") hp.batch_size = value.get<int>();
    else if (key == "entropy_coef") hp.entropy_coef = value.get<double>();
    else if (key == "gae_lambda") hp.gae_lambda = value.get<double>();
    else if (key == "clip_epsilon") hp.clip_epsilon = value.get<double>();
    else if (key == "value_coef") hp.value_coef = value.get<double>();
    else if (key == "ppo_epochs") hp.ppo_epochs = value.get<int>();
    else if (key == "max_rounds") hp.max_rounds = value.get<int>();
    else if (key == "pool_max_size") hp.pool_max_size = value.get<std::size_t>();
    else if (key == "pool_increment_iters")
      hp.pool_increment_iters = value.get<int>();
    else if (key == "pool_sample_p") hp.pool_sample_p = value.get<double>();
    else if (key == "hidden_dim") hp.hidden_dim = value.get<int>();
    else if (key == "activation")
      hp.activation = ActivationFromName(value.get<std::string>());
    else
      throw ContractError("unknown hyperparameter field: " + key);
  }
  ValidateHyperparams(hp);
  return hp;
}

std::vector<double> DiscountedReturns(const std::vector<double>& rewards,
                                      double gamma) {
  std::vector<double> returns(rewards.size());
  double acc = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    acc = rewards[i] + gamma * acc;
    returns[i] = acc;
  }
  return returns;
}

std::vector<double> GaeAdvantages(const std::vector<double>& rewards,
                                  const std::vector<double>& values,
                                  double bootstrap_value, double gamma,
                                  double lambda) {
  SECGAME_CHECK_MSG(rewards.size() == values.size(),
                    "rewards/values length mismatch");
  std::vector<double> advantages(rewards.size());
  double acc = 0.0;
  double next_value = bootstrap_value;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    const double delta = rewards[i] + gamma * next_value - values[i];
    acc = delta + gamma * lambda * acc;
    advantages[i] = acc;
    next_value = values[i];
  }
  return advantages;
}

std::vector<std::pair<std::size_t, std::size_t>> EpisodeRanges(
    const RolloutBatch& batch) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= batch.size(); ++i) {
    if (i == batch.size() || batch.episode_ids[i] != batch.episode_ids[start]) {
      ranges.emplace_back(start, i);
      start = i;
    }
  }
  return ranges;
}

AdvantageEstimates ComputeGaeForBatch(const RolloutBatch& batch, double gamma,
                                      double lambda) {
  AdvantageEstimates out;
  out.advantages.resize(batch.size());
  out.value_targets.resize(batch.size());
  for (const auto& [start, end] : EpisodeRanges(batch)) {
    const std::vector<double> rewards(batch.rewards.begin() + start,
                                      batch.rewards.begin() + end);
    const std::vector<double> values(batch.values.begin() + start,
                                     batch.values.begin() + end);
    const std::vector<double> advantages =
        GaeAdvantages(rewards, values, 0.0, gamma, lambda);
    for (std::size_t i = start; i < end; ++i) {
      out.advantages[i] = advantages[i - start];
      out.value_targets[i] = advantages[i - start] + values[i - start];
    }
  }
  return out;
}

void NormalizeAdvantages(std::vector<double>& advantages) {
  if (advantages.empty()) return;
  const double n = static_cast<double>(advantages.size());
  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= n;
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  var /= n;
  const double denom = std::sqrt(var) + 1e-8;
  for (double& a : advantages) a = (a - mean) / denom;
}

double ClippedSurrogate(double ratio, double advantage, double epsilon) {
  return std::min(ratio * advantage,
                  std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon) * advantage);
}

LossBreakdown ReinforceLoss(const ActorCriticNet& net,
                            const RolloutBatch& batch, double gamma,
                            NetParams* grads) {
  SECGAME_CHECK_MSG(batch.size() > 0, "empty batch");
  for (std::uint8_t t : batch.truncated) {
    SECGAME_CHECK_MSG(t == 0,
                      "REINFORCE requires complete episodes, found truncation");
  }
  std::vector<double> returns(batch.size());
  for (const auto& [start, end] : EpisodeRanges(batch)) {
    const std::vector<double> rewards(batch.rewards.begin() + start,
                                      batch.rewards.begin() + end);
    const std::vector<double> episode_returns = DiscountedReturns(rewards, gamma);
    std::copy(episode_returns.begin(), episode_returns.end(),
              returns.begin() + start);
  }

  const Forward forward =
      ForwardBatch(net, ObservationMatrix(batch.observations));
  const BatchDist dist =
      MaskedBatchDist(forward.logits, batch.flat_masks, batch.actions);

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  LossBreakdown loss;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss.policy += -dist.chosen_logp(i) * returns[i] * inv_n;
  }
  loss.total = loss.policy;
  loss.entropy = dist.entropy.mean();

  if (grads != nullptr) {
    Eigen::VectorXd logp_factor(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      logp_factor(i) = -returns[i] * inv_n;
    }
    const Eigen::MatrixXd dlogits =
        DistGradient(dist, batch.flat_masks, batch.actions, logp_factor,
                     Eigen::VectorXd::Zero(batch.size()));
    *grads = BackwardBatch(net, forward, dlogits,
                           Eigen::VectorXd::Zero(batch.size()));
  }
  return loss;
}

LossBreakdown PpoLoss(const ActorCriticNet& net, const RolloutBatch& batch,
                      const Hyperparams& hp,
                      const std::vector<double>& norm_advantages,
                      const std::vector<double>& value_targets,
                      NetParams* grads) {
  SECGAME_CHECK_MSG(batch.size() > 0, "empty batch");
  SECGAME_CHECK_MSG(batch.log_probs.size() == batch.size(),
                    "missing behavior log-probs");
  SECGAME_CHECK_MSG(norm_advantages.size() == batch.size() &&
                        value_targets.size() == batch.size(),
                    "advantage/target length mismatch");

  const Forward forward =
      ForwardBatch(net, ObservationMatrix(batch.observations));
  const BatchDist dist =
      MaskedBatchDist(forward.logits, batch.flat_masks, batch.actions);
  const PpoTerms terms = PpoPolicyTerms(dist.chosen_logp, batch.log_probs,
                                        norm_advantages, hp.clip_epsilon);

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  LossBreakdown loss;
  loss.policy = terms.policy_term;
  loss.mean_ratio = terms.mean_ratio;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double err = forward.values(i) - value_targets[i];
    loss.value += err * err * inv_n;
  }
  loss.entropy = dist.entropy.mean();
  loss.total =
      loss.policy + hp.value_coef * loss.value - hp.entropy_coef * loss.entropy;

  if (grads != nullptr) {
    const Eigen::VectorXd entropy_factor =
        Eigen::VectorXd::Constant(batch.size(), -hp.entropy_coef * inv_n);
    const Eigen::MatrixXd dlogits = DistGradient(
        dist, batch.flat_masks, batch.actions, terms.logp_factor, entropy_factor);
    Eigen::VectorXd dvalues(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      dvalues(i) =
          2.0 * (forward.values(i) - value_targets[i]) * hp.value_coef * inv_n;
    }
    *grads = BackwardBatch(net, forward, dlogits, dvalues);
  }
  return loss;
}

LossBreakdown PpoArLoss(const AutoregressiveNets& nets,
                        const RolloutBatch& batch, const Hyperparams& hp,
                        const std::vector<double>& norm_advantages,
                        const std::vector<double>& value_targets,
                        NetParams* node_grads, NetParams* type_grads) {
  SECGAME_CHECK_MSG(batch.size() > 0, "empty batch");
  SECGAME_CHECK_MSG(batch.log_probs.size() == batch.size(),
                    "missing behavior log-probs");

  const Forward node_forward =
      ForwardBatch(nets.node_net, ObservationMatrix(batch.observations));
  const BatchDist node_dist = MaskedBatchDist(node_forward.logits,
                                              batch.node_masks,
                                              batch.node_actions);
  const Forward type_forward =
      ForwardBatch(nets.type_net, TypeNetInputs(batch));
  const BatchDist type_dist = MaskedBatchDist(type_forward.logits,
                                              batch.type_masks,
                                              batch.type_actions);

  const Eigen::VectorXd joint_logp = node_dist.chosen_logp + type_dist.chosen_logp;
  const PpoTerms terms = PpoPolicyTerms(joint_logp, batch.log_probs,
                                        norm_advantages, hp.clip_epsilon);

  const double inv_n = 1.0 / static_cast<double>(batch.size());
  LossBreakdown loss;
  loss.policy = terms.policy_term;
  loss.mean_ratio = terms.mean_ratio;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double err = node_forward.values(i) - value_targets[i];
    loss.value += err * err * inv_n;
  }
  loss.entropy = (node_dist.entropy + type_dist.entropy).mean();
  loss.total =
      loss.policy + hp.value_coef * loss.value - hp.entropy_coef * loss.entropy;

  if (node_grads != nullptr || type_grads != nullptr) {
    SECGAME_CHECK_MSG(node_grads != nullptr && type_grads != nullptr,
                      "both gradient outputs must be provided");
    const Eigen::VectorXd entropy_factor =
        Eigen::VectorXd::Constant(batch.size(), -hp.entropy_coef * inv_n);
    // The joint log-probability is the sum of the stage log-probabilities,
    // so the policy factor applies to both stages unchanged.
    const Eigen::MatrixXd node_dlogits =
        DistGradient(node_dist, batch.node_masks, batch.node_actions,
                     terms.logp_factor, entropy_factor);
    Eigen::VectorXd dvalues(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      dvalues(i) = 2.0 * (node_forward.values(i) - value_targets[i]) *
                   hp.value_coef * inv_n;
    }
    *node_grads = BackwardBatch(nets.node_net, node_forward, node_dlogits,
                                dvalues);
    const Eigen::MatrixXd type_dlogits =
        DistGradient(type_dist, batch.type_masks, batch.type_actions,
                     terms.logp_factor, entropy_factor);
    *type_grads = BackwardBatch(nets.type_net, type_forward, type_dlogits,
                                Eigen::VectorXd::Zero(batch.size()));
  }
  return loss;
}

namespace {

bool FiniteLoss(const LossBreakdown& loss) {
  return std::isfinite(loss.total) && std::isfinite(loss.policy) &&
         std::isfinite(loss.value) && std::isfinite(loss.entropy);
}

}  // namespace

UpdateReport UpdateFlatPolicy(ActorCriticNet& net, AdamState& adam,
                              const RolloutBatch& batch, const Hyperparams& hp,
                              Algo algo) {
  SECGAME_CHECK_MSG(algo == Algo::kReinforce || algo == Algo::kPpo,
                    "flat update supports reinforce and ppo");
  const ActorCriticNet net_backup = net;
  const AdamState adam_backup = adam;
  UpdateReport report;

  if (algo == Algo::kReinforce) {
    NetParams grads = ZeroGrads(net);
    const LossBreakdown loss = ReinforceLoss(net, batch, hp.gamma, &grads);
    if (!FiniteLoss(loss) || !AllFinite(grads)) {
      net = net_backup;
      adam = adam_backup;
      report.nan_abort = true;
      report.policy_loss = report.value_loss = report.entropy =
          report.grad_norm = std::numeric_limits<double>::quiet_NaN();
      return report;
    }
    AdamStep(net, grads, adam, hp.learning_rate);
    report.policy_loss = loss.policy;
    report.value_loss = 0.0;
    report.entropy = loss.entropy;
    report.grad_norm = GradNorm(grads);
    return report;
  }

  AdvantageEstimates estimates =
      ComputeGaeForBatch(batch, hp.gamma, hp.gae_lambda);
  std::vector<double> norm_advantages = estimates.advantages;
  NormalizeAdvantages(norm_advantages);

  for (int epoch = 0; epoch < hp.ppo_epochs; ++epoch) {
    NetParams grads = ZeroGrads(net);
    const LossBreakdown loss = PpoLoss(net, batch, hp, norm_advantages,
                                       estimates.value_targets, &grads);
    if (!FiniteLoss(loss) || !AllFinite(grads)) {
      net = net_backup;
      adam = adam_backup;
      report.nan_abort = true;
      report.policy_loss = report.value_loss = report.entropy =
          report.grad_norm = std::numeric_limits<double>::quiet_NaN();
      return report;
    }
    AdamStep(net, grads, adam, hp.learning_rate);
    report.policy_loss = loss.policy;
    report.value_loss = loss.value;
    report.entropy = loss.entropy;
    report.grad_norm = GradNorm(grads);
  }
  return report;
}

UpdateReport UpdateAutoregressivePolicy(AutoregressiveNets& nets,
                                        AdamState& node_adam,
                                        AdamState& type_adam,
                                        const RolloutBatch& batch,
                                        const Hyperparams& hp) {
  const AutoregressiveNets nets_backup = nets;
  const AdamState node_backup = node_adam;
  const AdamState type_backup = type_adam;
  UpdateReport report;

  AdvantageEstimates estimates =
      ComputeGaeForBatch(batch, hp.gamma, hp.gae_lambda);
  std::vector<double> norm_advantages = estimates.advantages;
  NormalizeAdvantages(norm_advantages);

  for (int epoch = 0; epoch < hp.ppo_epochs; ++epoch) {
    NetParams node_grads = ZeroGrads(nets.node_net);
    NetParams type_grads = ZeroGrads(nets.type_net);
    const LossBreakdown loss =
        PpoArLoss(nets, batch, hp, norm_advantages, estimates.value_targets,
                  &node_grads, &type_grads);
    if (!FiniteLoss(loss) || !AllFinite(node_grads) || !AllFinite(type_grads)) {
      nets = nets_backup;
      node_adam = node_backup;
      type_adam = type_backup;
      report.nan_abort = true;
      report.policy_loss = report.value_loss = report.entropy =
          report.grad_norm = std::numeric_limits<double>::quiet_NaN();
      return report;
    }
    AdamStep(nets.node_net, node_grads, node_adam, hp.learning_rate);
    AdamStep(nets.type_net, type_grads, type_adam, hp.learning_rate);
    report.policy_loss = loss.policy;
    report.value_loss = loss.value;
    report.entropy = loss.entropy;
    const double node_norm = GradNorm(node_grads);
    const double type_norm = GradNorm(type_grads);
    report.grad_norm =
        std::sqrt(node_norm * node_norm + type_norm * type_norm);
  }
  return report;
}

}  // namespace secgame
