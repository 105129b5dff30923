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

#include "secgame/neural.h"

#include <cmath>

namespace secgame {

namespace {

constexpr int kCheckpointVersion = 1;
constexpr double kGeluCoeff = 0.044715;
constexpr double kHeadGain = 0.01;

double ActivationGain(Activation activation) {
  switch (activation) {
    case Activation::kTanh: return 1.0;
    case Activation::kSoftplus:
    case Activation::kGelu: return std::sqrt(2.0);
  }
  return 1.0;
}

double ApplyActivation(Activation activation, double x) {
  switch (activation) {
    case Activation::kTanh:
      return std::tanh(x);
    case Activation::kSoftplus:
      return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    case Activation::kGelu: {
      const double c = std::sqrt(2.0 / M_PI);
      const double u = c * (x + kGeluCoeff * x * x * x);
      return 0.5 * x * (1.0 + std::tanh(u));
    }
  }
  return x;
}

double ActivationDerivative(Activation activation, double x) {
  switch (activation) {
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSoftplus:
      return 1.0 / (1.0 + std::exp(-x));
    case Activation::kGelu: {
      const double c = std::sqrt(2.0 / M_PI);
      const double u = c * (x + kGeluCoeff * x * x * x);
      const double t = std::tanh(u);
      const double du = c * (1.0 + 3.0 * kGeluCoeff * x * x);
      return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * du;
    }
  }
  return 1.0;
}

Eigen::MatrixXd ActivateMatrix(Activation activation,
                               const Eigen::MatrixXd& z) {
  return z.unaryExpr(
      [activation](double x) { return ApplyActivation(activation, x); });
}

Eigen::MatrixXd ActivateDerivativeMatrix(Activation activation,
                                         const Eigen::MatrixXd& z) {
  return z.unaryExpr(
      [activation](double x) { return ActivationDerivative(activation, x); });
}

Linear MakeLinear(int out, int in, double gain, Rng& rng) {
  Linear layer;
  layer.weight.resize(out, in);
  const double limit = gain * std::sqrt(6.0 / (in + out));
  for (Eigen::Index i = 0; i < layer.weight.size(); ++i) {
    layer.weight.data()[i] = (2.0 * rng.Uniform() - 1.0) * limit;
  }
  layer.bias = Eigen::VectorXd::Zero(out);
  return layer;
}

Linear ZeroLike(const Linear& layer) {
  Linear out;
  out.weight = Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols());
  out.bias = Eigen::VectorXd::Zero(layer.bias.size());
  return out;
}

void CheckLayerFinite(const Eigen::MatrixXd& values, const char* layer) {
  SECGAME_CHECK_MSG(values.allFinite(),
                    "non-finite values in layer " << layer);
}

nlohmann::ordered_json LinearToJson(const Linear& layer) {
  std::vector<std::vector<double>> weight(layer.weight.rows());
  for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
    weight[r].assign(layer.weight.row(r).begin(), layer.weight.row(r).end());
  }
  nlohmann::ordered_json j;
  j["weight"] = weight;
  j["bias"] = std::vector<double>(layer.bias.begin(), layer.bias.end());
  return j;
}

Linear LinearFromJson(const nlohmann::json& j) {
  const auto weight = j.at("weight").get<std::vector<std::vector<double>>>();
  const auto bias = j.at("bias").get<std::vector<double>>();
  Linear layer;
  layer.weight.resize(weight.size(), weight.empty() ? 0 : weight[0].size());
  for (std::size_t r = 0; r < weight.size(); ++r) {
    SECGAME_CHECK_MSG(weight[r].size() == weight[0].size(),
                      "ragged weight matrix in checkpoint");
    for (std::size_t c = 0; c < weight[r].size(); ++c) {
      layer.weight(r, c) = weight[r][c];
    }
  }
  layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), bias.size());
  return layer;
}

}  // namespace

std::string ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kTanh: return "tanh";
    case Activation::kSoftplus: return "softplus";
    case Activation::kGelu: return "gelu";
  }
  return "unknown";
}

Activation ActivationFromName(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "softplus") return Activation::kSoftplus;
  if (name == "gelu") return Activation::kGelu;
  throw ContractError("unknown activation: " + name);
}

ActorCriticNet MakeNet(int input_dim, int action_count, bool has_value_head,
                       Activation activation, int hidden_dim, Rng& rng) {
  SECGAME_CHECK_MSG(input_dim > 0 && action_count > 0 && hidden_dim > 0,
                    "net dimensions must be positive");
  ActorCriticNet net;
  net.input_dim = input_dim;
  net.hidden_dim = hidden_dim;
  net.action_count = action_count;
  net.has_value_head = has_value_head;
  net.activation = activation;
  const double gain = ActivationGain(activation);
  net.params.fc1 = MakeLinear(hidden_dim, input_dim, gain, rng);
  net.params.fc2 = MakeLinear(hidden_dim, hidden_dim, gain, rng);
  // Near-zero head scales keep the initial policy close to uniform over the
  // legal actions and the initial value estimates close to zero.
  net.params.policy_head = MakeLinear(action_count, hidden_dim, kHeadGain, rng);
  if (has_value_head) {
    net.params.value_head = MakeLinear(1, hidden_dim, kHeadGain, rng);
  }
  return net;
}

NetParams ZeroGrads(const ActorCriticNet& net) {
  NetParams grads;
  grads.fc1 = ZeroLike(net.params.fc1);
  grads.fc2 = ZeroLike(net.params.fc2);
  grads.policy_head = ZeroLike(net.params.policy_head);
  grads.value_head = ZeroLike(net.params.value_head);
  return grads;
}

std::vector<TensorView> TensorViews(NetParams& params) {
  std::vector<TensorView> views;
  for (Linear* layer :
       {&params.fc1, &params.fc2, &params.policy_head, &params.value_head}) {
    views.push_back({layer->weight.data(), layer->weight.size()});
    views.push_back({layer->bias.data(), layer->bias.size()});
  }
  return views;
}

std::vector<ConstTensorView> TensorViews(const NetParams& params) {
  std::vector<ConstTensorView> views;
  for (const Linear* layer :
       {&params.fc1, &params.fc2, &params.policy_head, &params.value_head}) {
    views.push_back({layer->weight.data(), layer->weight.size()});
    views.push_back({layer->bias.data(), layer->bias.size()});
  }
  return views;
}

double GradNorm(const NetParams& grads) {
  double sum = 0.0;
  for (const auto& view : TensorViews(grads)) {
    for (Eigen::Index i = 0; i < view.size; ++i) {
      sum += view.data[i] * view.data[i];
    }
  }
  return std::sqrt(sum);
}

bool AllFinite(const NetParams& params) {
  for (const auto& view : TensorViews(params)) {
    for (Eigen::Index i = 0; i < view.size; ++i) {
      if (!std::isfinite(view.data[i])) return false;
    }
  }
  return true;
}

Forward ForwardBatch(const ActorCriticNet& net, const Eigen::MatrixXd& input) {
  SECGAME_CHECK_MSG(input.cols() == net.input_dim,
                    "observation length " << input.cols()
                                          << " != input_dim " << net.input_dim);
  CheckLayerFinite(input, "input");
  Forward f;
  f.input = input;
  f.z1 = (input * net.params.fc1.weight.transpose()).rowwise() +
         net.params.fc1.bias.transpose();
  CheckLayerFinite(f.z1, "fc1");
  f.h1 = ActivateMatrix(net.activation, f.z1);
  f.z2 = (f.h1 * net.params.fc2.weight.transpose()).rowwise() +
         net.params.fc2.bias.transpose();
  CheckLayerFinite(f.z2, "fc2");
  f.h2 = ActivateMatrix(net.activation, f.z2);
  f.logits = (f.h2 * net.params.policy_head.weight.transpose()).rowwise() +
             net.params.policy_head.bias.transpose();
  CheckLayerFinite(f.logits, "policy_head");
  if (net.has_value_head) {
    f.values = f.h2 * net.params.value_head.weight.transpose() +
               Eigen::VectorXd::Constant(input.rows(),
                                         net.params.value_head.bias(0));
    CheckLayerFinite(f.values, "value_head");
  } else {
    f.values = Eigen::VectorXd::Zero(input.rows());
  }
  return f;
}

NetOutput ForwardOne(const ActorCriticNet& net, const Eigen::VectorXd& obs) {
  const Forward f = ForwardBatch(net, obs.transpose());
  return {f.logits.row(0).transpose(), f.values(0)};
}

NetParams BackwardBatch(const ActorCriticNet& net, const Forward& forward,
                        const Eigen::MatrixXd& dlogits,
                        const Eigen::VectorXd& dvalues) {
  SECGAME_CHECK_MSG(dlogits.rows() == forward.input.rows() &&
                        dlogits.cols() == net.action_count,
                    "dlogits shape mismatch");
  NetParams grads = ZeroGrads(net);

  grads.policy_head.weight = dlogits.transpose() * forward.h2;
  grads.policy_head.bias = dlogits.colwise().sum().transpose();
  Eigen::MatrixXd dh2 = dlogits * net.params.policy_head.weight;

  if (net.has_value_head) {
    SECGAME_CHECK_MSG(dvalues.size() == forward.input.rows(),
                      "dvalues shape mismatch");
    grads.value_head.weight = dvalues.transpose() * forward.h2;
    grads.value_head.bias = Eigen::VectorXd::Constant(1, dvalues.sum());
    dh2.noalias() += dvalues * net.params.value_head.weight;
  }

  const Eigen::MatrixXd dz2 =
      dh2.cwiseProduct(ActivateDerivativeMatrix(net.activation, forward.z2));
  grads.fc2.weight = dz2.transpose() * forward.h1;
  grads.fc2.bias = dz2.colwise().sum().transpose();

  const Eigen::MatrixXd dh1 = dz2 * net.params.fc2.weight;
  const Eigen::MatrixXd dz1 =
      dh1.cwiseProduct(ActivateDerivativeMatrix(net.activation, forward.z1));
  grads.fc1.weight = dz1.transpose() * forward.input;
  grads.fc1.bias = dz1.colwise().sum().transpose();

  return grads;
}

AdamState MakeAdamState(const ActorCriticNet& net) {
  AdamState state;
  state.first_moment = ZeroGrads(net);
  state.second_moment = ZeroGrads(net);
  state.step = 0;
  return state;
}

void AdamStep(ActorCriticNet& net, const NetParams& grads, AdamState& state,
              double learning_rate, double beta1, double beta2,
              double epsilon) {
  auto params = TensorViews(net.params);
  auto grad_views = TensorViews(grads);
  auto m_views = TensorViews(state.first_moment);
  auto v_views = TensorViews(state.second_moment);
  SECGAME_CHECK_MSG(params.size() == grad_views.size(),
                    "gradient bundle shape mismatch");
  state.step += 1;
  const double bias1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t t = 0; t < params.size(); ++t) {
    SECGAME_CHECK_MSG(params[t].size == grad_views[t].size,
                      "gradient tensor shape mismatch");
    for (Eigen::Index i = 0; i < params[t].size; ++i) {
      const double g = grad_views[t].data[i];
      double& m = m_views[t].data[i];
      double& v = v_views[t].data[i];
      m = beta1 * m + (1.0 - beta1) * g;
      v = beta2 * v + (1.0 - beta2) * g * g;
      const double m_hat = m / bias1;
      const double v_hat = v / bias2;
      params[t].data[i] -= learning_rate * m_hat / (std::sqrt(v_hat) + epsilon);
    }
  }
  SECGAME_CHECK_MSG(AllFinite(net.params),
                    "non-finite parameters after Adam update");
}

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits) {
  SECGAME_CHECK_MSG(logits.size() > 0, "softmax of empty vector");
  const double max_logit = logits.maxCoeff();
  Eigen::VectorXd probs = (logits.array() - max_logit).exp();
  return probs / probs.sum();
}

int SampleCategorical(const Eigen::VectorXd& probs, Rng& rng) {
  SECGAME_CHECK_MSG(probs.size() > 0, "sampling from empty distribution");
  const double target = rng.Uniform() * probs.sum();
  double cumulative = 0.0;
  int last_positive = -1;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) > 0) last_positive = static_cast<int>(i);
    cumulative += probs(i);
    if (target < cumulative) return static_cast<int>(i);
  }
  SECGAME_CHECK_MSG(last_positive >= 0, "distribution has no mass");
  return last_positive;
}

double Entropy(const Eigen::VectorXd& probs) {
  SECGAME_CHECK_MSG(probs.size() > 0, "entropy of empty vector");
  double h = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) > 0) h -= probs(i) * std::log(probs(i));
  }
  return h;
}

double MaskedCategorical::LogProb(int index) const {
  SECGAME_CHECK_MSG(index >= 0 && index < probs.size(),
                    "log-prob index out of range");
  SECGAME_CHECK_MSG(probs(index) > 0, "log-prob of a masked action");
  return std::log(probs(index));
}

MaskedCategorical MaskedSoftmax(const Eigen::VectorXd& logits,
                                const std::vector<std::uint8_t>& mask) {
  SECGAME_CHECK_MSG(static_cast<Eigen::Index>(mask.size()) == logits.size(),
                    "mask length mismatch");
  double max_logit = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (mask[i] && logits(i) > max_logit) max_logit = logits(i);
  }
  SECGAME_CHECK_MSG(std::isfinite(max_logit), "mask has no legal entry");
  MaskedCategorical dist;
  dist.probs = Eigen::VectorXd::Zero(logits.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    if (mask[i]) {
      dist.probs(i) = std::exp(logits(i) - max_logit);
      sum += dist.probs(i);
    }
  }
  dist.probs /= sum;
  dist.entropy = Entropy(dist.probs);
  return dist;
}

nlohmann::ordered_json NetToJson(const ActorCriticNet& net) {
  nlohmann::ordered_json j;
  j["version"] = kCheckpointVersion;
  j["input_dim"] = net.input_dim;
  j["hidden_dim"] = net.hidden_dim;
  j["action_count"] = net.action_count;
  j["has_value_head"] = net.has_value_head;
  j["activation"] = ActivationName(net.activation);
  j["fc1"] = LinearToJson(net.params.fc1);
  j["fc2"] = LinearToJson(net.params.fc2);
  j["policy_head"] = LinearToJson(net.params.policy_head);
  if (net.has_value_head) j["value_head"] = LinearToJson(net.params.value_head);
  return j;
}

ActorCriticNet NetFromJson(const nlohmann::json& j) {
  SECGAME_CHECK_MSG(j.at("version").get<int>() == kCheckpointVersion,
                    "unsupported checkpoint version");
  ActorCriticNet net;
  net.input_dim = j.at("input_dim").get<int>();
  net.hidden_dim = j.at("hidden_dim").get<int>();
  net.action_count = j.at("action_count").get<int>();
  net.has_value_head = j.at("has_value_head").get<bool>();
  net.activation = ActivationFromName(j.at("activation").get<std::string>());
  net.params.fc1 = LinearFromJson(j.at("fc1"));
  net.params.fc2 = LinearFromJson(j.at("fc2"));
  net.params.policy_head = LinearFromJson(j.at("policy_head"));
  if (net.has_value_head) {
    net.params.value_head = LinearFromJson(j.at("value_head"));
  }
  SECGAME_CHECK_MSG(net.params.fc1.weight.rows() == net.hidden_dim &&
                        net.params.fc1.weight.cols() == net.input_dim &&
                        net.params.policy_head.weight.rows() == net.action_count,
                    "checkpoint shapes do not match header");
  return net;
}

}  // namespace secgame
