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
// Small feed-forward actor-critic network with hand-derived gradients:
// two shared hidden layers, a linear policy head over action logits and an
// optional linear value head. No autodiff; the backward pass is written for
// exactly this architecture.

#ifndef SECGAME_NEURAL_H_
#define SECGAME_NEURAL_H_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "secgame/rng.h"

namespace secgame {

enum class Activation { kTanh, kSoftplus, kGelu };

std::string ActivationName(Activation activation);
Activation ActivationFromName(const std::string& name);

struct Linear {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

// Parameter bundle; also reused as the holder for gradients and Adam
// moments, which mirror the parameter shapes.
struct NetParams {
  Linear fc1, fc2, policy_head, value_head;
};

struct ActorCriticNet {
  int input_dim = 0;
  int hidden_dim = 0;
  int action_count = 0;
  bool has_value_head = true;
  Activation activation = Activation::kSoftplus;
  NetParams params;
};

// Scaled-uniform (Glorot) initialization with activation-dependent gain;
// biases start at zero.
ActorCriticNet MakeNet(int input_dim, int action_count, bool has_value_head,
                       Activation activation, int hidden_dim, Rng& rng);

NetParams ZeroGrads(const ActorCriticNet& net);

// Mutable views over every parameter tensor, in a fixed order. Grad/moment
// bundles created from the same net yield views in lockstep.
struct TensorView {
  double* data = nullptr;
  Eigen::Index size = 0;
};
struct ConstTensorView {
  const double* data = nullptr;
  Eigen::Index size = 0;
};
std::vector<TensorView> TensorViews(NetParams& params);
std::vector<ConstTensorView> TensorViews(const NetParams& params);

double GradNorm(const NetParams& grads);
bool AllFinite(const NetParams& params);

// Batched forward pass with cached pre-activations for the backward pass.
struct Forward {
  Eigen::MatrixXd input;             // B x in
  Eigen::MatrixXd z1, h1, z2, h2;    // B x hidden
  Eigen::MatrixXd logits;            // B x actions
  Eigen::VectorXd values;            // B (zero when no value head)
};

// Throws on input dimension mismatch and on non-finite intermediate values,
// naming the offending layer.
Forward ForwardBatch(const ActorCriticNet& net, const Eigen::MatrixXd& input);

struct NetOutput {
  Eigen::VectorXd logits;
  double value = 0.0;
};
NetOutput ForwardOne(const ActorCriticNet& net, const Eigen::VectorXd& obs);

// Backward pass for loss gradients given d(loss)/d(logits) and
// d(loss)/d(values). dvalues is ignored for nets without a value head.
NetParams BackwardBatch(const ActorCriticNet& net, const Forward& forward,
                        const Eigen::MatrixXd& dlogits,
                        const Eigen::VectorXd& dvalues);

struct AdamState {
  NetParams first_moment;
  NetParams second_moment;
  std::int64_t step = 0;
};

AdamState MakeAdamState(const ActorCriticNet& net);

// Standard Adam with bias correction. Throws if shapes mismatch or the
// update produces non-finite parameters.
void AdamStep(ActorCriticNet& net, const NetParams& grads, AdamState& state,
              double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
              double epsilon = 1e-8);

// Overflow-safe (max-subtracted) softmax.
Eigen::VectorXd Softmax(const Eigen::VectorXd& logits);
int SampleCategorical(const Eigen::VectorXd& probs, Rng& rng);
double Entropy(const Eigen::VectorXd& probs);

// Masked categorical distribution over the legal subset. probs are zero at
// masked entries and sum to one over the rest.
struct MaskedCategorical {
  Eigen::VectorXd probs;
  double entropy = 0.0;
  double LogProb(int index) const;
};
MaskedCategorical MaskedSoftmax(const Eigen::VectorXd& logits,
                                const std::vector<std::uint8_t>& mask);

// Versioned JSON checkpoints; doubles round-trip bit-exactly.
nlohmann::ordered_json NetToJson(const ActorCriticNet& net);
ActorCriticNet NetFromJson(const nlohmann::json& j);

}  // namespace secgame

#endif  // SECGAME_NEURAL_H_
