// Copyright 2026 The EikGCRL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eikgcrl/diffcore/mlp.h"

#include <cmath>
#include <random>
#include <string>

#include "eikgcrl/diffcore/dual.h"
#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {
namespace {

std::string WeightName(int l) { return "w" + std::to_string(l); }
std::string BiasName(int l) { return "b" + std::to_string(l); }

int FanIn(const MlpSpec& spec, int l) {
  return l == 0 ? spec.input_dim : spec.hidden_dims[l - 1];
}

int FanOut(const MlpSpec& spec, int l) {
  return l == spec.num_layers() - 1 ? spec.output_dim : spec.hidden_dims[l];
}

Var Activate(Activation act, Var z) {
  switch (act) {
    case Activation::kTanh: return Tanh(z);
    case Activation::kSoftplus: return Softplus(z);
    case Activation::kRelu: return Relu(z);
  }
  throw InvalidArgument("unknown activation");
}

// sigma'(z) as tape operations, so that it is differentiable in turn.
Var ActivationSlope(Activation act, Var pre, Var post) {
  switch (act) {
    case Activation::kTanh: return AddScalar(Neg(Square(post)), 1.0);
    case Activation::kSoftplus: return Sigmoid(pre);
    case Activation::kRelu: return Step(pre);
  }
  throw InvalidArgument("unknown activation");
}

void ActivateInPlace(Activation act, Matrix& z) {
  switch (act) {
    case Activation::kTanh:
      z = z.array().tanh().matrix();
      return;
    case Activation::kSoftplus:
      z = z.unaryExpr([](double v) {
        return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v)));
      });
      return;
    case Activation::kRelu:
      z = z.cwiseMax(0.0);
      return;
  }
}

Matrix SlopeOf(Activation act, const Matrix& pre, const Matrix& post) {
  switch (act) {
    case Activation::kTanh:
      return (1.0 - post.array().square()).matrix();
    case Activation::kSoftplus:
      return pre.unaryExpr([](double v) {
        return v >= 0 ? 1.0 / (1.0 + std::exp(-v))
                      : std::exp(v) / (1.0 + std::exp(v));
      });
    case Activation::kRelu:
      return pre.unaryExpr([](double v) { return v > 0 ? 1.0 : 0.0; });
  }
  throw InvalidArgument("unknown activation");
}

void CheckInput(const MlpSpec& spec, const Matrix& x) {
  if (x.cols() != spec.input_dim) {
    throw InvalidArgument("network input has " + std::to_string(x.cols()) +
                          " columns, expected " +
                          std::to_string(spec.input_dim));
  }
  if (!x.allFinite()) throw NumericalError("non-finite network input");
}

}  // namespace

const char* ActivationName(Activation a) {
  switch (a) {
    case Activation::kTanh: return "tanh";
    case Activation::kSoftplus: return "softplus";
    case Activation::kRelu: return "relu";
  }
  return "unknown";
}

Activation ParseActivation(std::string_view name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "softplus") return Activation::kSoftplus;
  if (name == "relu") return Activation::kRelu;
  throw InvalidArgument("unknown activation: " + std::string(name));
}

void ValidateSpec(const MlpSpec& spec, bool require_twice_differentiable) {
  if (spec.input_dim < 1 || spec.output_dim < 1) {
    throw InvalidArgument("network input/output dims must be >= 1");
  }
  for (int h : spec.hidden_dims) {
    if (h < 1) throw InvalidArgument("hidden dims must be >= 1");
  }
  if (require_twice_differentiable && spec.activation == Activation::kRelu) {
    throw InvalidArgument(
        "activation 'relu' is not twice differentiable; the input-gradient "
        "penalty needs tanh or softplus");
  }
}

std::vector<Var> MlpVars::Flat() const {
  std::vector<Var> out;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    out.push_back(weights[l]);
    out.push_back(biases[l]);
  }
  return out;
}

ParameterSet InitParams(const MlpSpec& spec, std::uint64_t seed) {
  ValidateSpec(spec, false);
  std::mt19937_64 rng(seed);
  ParameterSet params;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const int fan_in = FanIn(spec, l);
    const int fan_out = FanOut(spec, l);
    const double limit = std::sqrt(3.0 / fan_in);
    std::uniform_real_distribution<double> dist(-limit, limit);
    Matrix w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i) {
      for (int j = 0; j < fan_out; ++j) w(i, j) = dist(rng);
    }
    params.Add(WeightName(l),
               {static_cast<std::uint32_t>(fan_in),
                static_cast<std::uint32_t>(fan_out)},
               std::move(w));
    params.Add(BiasName(l), {static_cast<std::uint32_t>(fan_out)},
               Matrix::Zero(1, fan_out));
  }
  return params;
}

MlpSpec InferSpec(const ParameterSet& params, Activation activation) {
  if (params.size() < 2 || params.size() % 2 != 0) {
    throw InvalidArgument("MLP parameters must come in weight/bias pairs");
  }
  const int layers = static_cast<int>(params.size() / 2);
  MlpSpec spec;
  spec.activation = activation;
  spec.hidden_dims.clear();
  for (int l = 0; l < layers; ++l) {
    if (!params.Contains(WeightName(l)) || !params.Contains(BiasName(l)) ||
        params.IndexOf(WeightName(l)) != static_cast<std::size_t>(2 * l) ||
        params.IndexOf(BiasName(l)) != static_cast<std::size_t>(2 * l + 1)) {
      throw InvalidArgument("MLP parameters out of order at layer " +
                            std::to_string(l));
    }
    const Matrix& w = params.values(2 * l);
    if (l == 0) spec.input_dim = static_cast<int>(w.rows());
    if (l + 1 < layers) {
      spec.hidden_dims.push_back(static_cast<int>(w.cols()));
    } else {
      spec.output_dim = static_cast<int>(w.cols());
    }
  }
  for (int l = 0; l < layers; ++l) {
    const Matrix& w = params.values(2 * l);
    const Matrix& b = params.values(2 * l + 1);
    if (w.rows() != FanIn(spec, l) || b.rows() != 1 || b.cols() != w.cols()) {
      throw InvalidArgument("inconsistent MLP shapes at layer " +
                            std::to_string(l));
    }
  }
  return spec;
}

MlpVars BindParams(Tape& tape, const ParameterSet& params, const MlpSpec& spec,
                   bool trainable) {
  if (params.size() != 2 * static_cast<std::size_t>(spec.num_layers())) {
    throw InvalidArgument("parameter set does not match network spec");
  }
  MlpVars vars;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const Matrix& w = params.values(2 * l);
    const Matrix& b = params.values(2 * l + 1);
    if (w.rows() != FanIn(spec, l) || w.cols() != FanOut(spec, l)) {
      throw InvalidArgument("weight shape mismatch in layer " +
                            std::to_string(l));
    }
    vars.weights.push_back(trainable ? tape.Param(w) : tape.Constant(w));
    vars.biases.push_back(trainable ? tape.Param(b) : tape.Constant(b));
  }
  return vars;
}

MlpTrace MlpForward(const MlpVars& vars, const MlpSpec& spec, Var x) {
  if (x.cols() != spec.input_dim) {
    throw InvalidArgument("network input has wrong width");
  }
  MlpTrace trace;
  Var h = x;
  const int last = spec.num_layers() - 1;
  for (int l = 0; l < last; ++l) {
    Var z = AddRow(MatMul(h, vars.weights[l]), vars.biases[l]);
    h = Activate(spec.activation, z);
    trace.pre.push_back(z);
    trace.hidden.push_back(h);
  }
  trace.out = AddRow(MatMul(h, vars.weights[last]), vars.biases[last]);
  return trace;
}

Var MlpInputGradient(const MlpVars& vars, const MlpSpec& spec,
                     const MlpTrace& trace) {
  if (spec.output_dim != 1) {
    throw InvalidArgument("input gradient needs a scalar-output network");
  }
  Tape& tape = *trace.out.tape();
  const int last = spec.num_layers() - 1;
  // Seed: d out / d h_{last-1} = w_last^T for every row.
  Var ones = tape.Constant(Matrix::Ones(trace.out.rows(), 1));
  Var g = MatMul(ones, Transpose(vars.weights[last]));
  for (int l = last - 1; l >= 0; --l) {
    Var slope = ActivationSlope(spec.activation, trace.pre[l], trace.hidden[l]);
    Var d = Mul(slope, g);
    g = MatMul(d, Transpose(vars.weights[l]));
  }
  return g;
}

Matrix Forward(const ParameterSet& params, const MlpSpec& spec,
               const Matrix& x) {
  CheckInput(spec, x);
  Matrix h = x;
  const int last = spec.num_layers() - 1;
  for (int l = 0; l < spec.num_layers(); ++l) {
    Matrix z = (h * params.values(2 * l)).rowwise() +
               params.values(2 * l + 1).row(0);
    if (l < last) ActivateInPlace(spec.activation, z);
    h = std::move(z);
  }
  return h;
}

Vector Forward(const ParameterSet& params, const MlpSpec& spec,
               const Vector& x) {
  Matrix row = x.transpose();
  return Forward(params, spec, row).row(0).transpose();
}

Matrix InputGradient(const ParameterSet& params, const MlpSpec& spec,
                     const Matrix& x) {
  CheckInput(spec, x);
  if (spec.output_dim != 1) {
    throw InvalidArgument("input gradient needs a scalar-output network");
  }
  const int last = spec.num_layers() - 1;
  std::vector<Matrix> pre;
  std::vector<Matrix> post;
  Matrix h = x;
  for (int l = 0; l < last; ++l) {
    Matrix z = (h * params.values(2 * l)).rowwise() +
               params.values(2 * l + 1).row(0);
    pre.push_back(z);
    ActivateInPlace(spec.activation, z);
    post.push_back(z);
    h = post.back();
  }
  Matrix g = Matrix::Ones(x.rows(), 1) * params.values(2 * last).transpose();
  for (int l = last - 1; l >= 0; --l) {
    g = g.cwiseProduct(SlopeOf(spec.activation, pre[l], post[l])) *
        params.values(2 * l).transpose();
  }
  return g;
}

Matrix GradInput(const ParameterSet& params, const MlpSpec& spec,
                 const Matrix& states, const Matrix& goals) {
  if (states.rows() != goals.rows()) {
    throw InvalidArgument("states and goals have different batch sizes");
  }
  if (states.cols() + goals.cols() != spec.input_dim) {
    throw InvalidArgument("dim(s) + dim(g) does not match network input");
  }
  Matrix x(states.rows(), spec.input_dim);
  x << states, goals;
  return InputGradient(params, spec, x).leftCols(states.cols());
}

LossAndGrad GradParams(const LossFn& loss_fn, const ParameterSet& params) {
  Tape tape;
  std::vector<Var> leaves;
  leaves.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    leaves.push_back(tape.Param(params.values(i)));
  }
  Var loss = loss_fn(tape, leaves);
  std::vector<Matrix> grads = tape.Gradients(loss, leaves);
  LossAndGrad out{loss.scalar(), params.ZerosLike()};
  for (std::size_t i = 0; i < params.size(); ++i) {
    out.grad.mutable_values(i) = std::move(grads[i]);
  }
  return out;
}

LossAndGrad GradParamsThroughInputGrad(const ParameterSet& params,
                                       const MlpSpec& spec,
                                       const Matrix& states,
                                       const Matrix& goals,
                                       const InputGradPenaltyFn& penalty_fn) {
  ValidateSpec(spec, true);
  if (states.cols() + goals.cols() != spec.input_dim) {
    throw InvalidArgument("dim(s) + dim(g) does not match network input");
  }
  Tape tape;
  MlpVars vars = BindParams(tape, params, spec, true);
  Matrix x(states.rows(), spec.input_dim);
  x << states, goals;
  MlpTrace trace = MlpForward(vars, spec, tape.Constant(std::move(x)));
  Var grad_s = SliceCols(MlpInputGradient(vars, spec, trace), 0, states.cols());
  Var loss = Mean(penalty_fn(tape, grad_s));
  std::vector<Var> flat = vars.Flat();
  std::vector<Matrix> grads = tape.Gradients(loss, flat);
  LossAndGrad out{loss.scalar(), params.ZerosLike()};
  for (std::size_t i = 0; i < params.size(); ++i) {
    out.grad.mutable_values(i) = std::move(grads[i]);
  }
  return out;
}

Dual::Dual(Matrix primal, Matrix tangent)
    : primal_(std::move(primal)), tangent_(std::move(tangent)) {
  if (primal_.rows() != tangent_.rows() || primal_.cols() != tangent_.cols()) {
    throw InvalidArgument("dual primal and tangent shapes differ");
  }
}

Dual ForwardDual(const ParameterSet& params, const MlpSpec& spec,
                 const Dual& x) {
  CheckInput(spec, x.primal());
  Matrix h = x.primal();
  Matrix dh = x.tangent();
  const int last = spec.num_layers() - 1;
  for (int l = 0; l < spec.num_layers(); ++l) {
    const Matrix& w = params.values(2 * l);
    Matrix z = (h * w).rowwise() + params.values(2 * l + 1).row(0);
    Matrix dz = dh * w;
    if (l < last) {
      Matrix pre = z;
      ActivateInPlace(spec.activation, z);
      dz = dz.cwiseProduct(SlopeOf(spec.activation, pre, z));
    }
    h = std::move(z);
    dh = std::move(dz);
  }
  return Dual(std::move(h), std::move(dh));
}

}  // namespace eikgcrl::diffcore
