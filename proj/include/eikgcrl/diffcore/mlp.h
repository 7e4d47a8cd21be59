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

#ifndef EIKGCRL_DIFFCORE_MLP_H_
#define EIKGCRL_DIFFCORE_MLP_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "eikgcrl/diffcore/parameter_set.h"
#include "eikgcrl/diffcore/tape.h"

namespace eikgcrl::diffcore {

enum class Activation { kTanh, kSoftplus, kRelu };

const char* ActivationName(Activation a);
// Throws InvalidArgument for unknown names.
Activation ParseActivation(std::string_view name);

// Fully connected network: hidden layers use `activation`, the output layer
// is affine. Parameters are named w0, b0, w1, b1, ... with w_l of shape
// [fan_in, fan_out].
struct MlpSpec {
  int input_dim = 1;
  std::vector<int> hidden_dims = {256, 256};
  int output_dim = 1;
  Activation activation = Activation::kTanh;

  int num_layers() const { return static_cast<int>(hidden_dims.size()) + 1; }
  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

// Throws InvalidArgument if any dimension is < 1, or if
// `require_twice_differentiable` and the activation is piecewise linear.
void ValidateSpec(const MlpSpec& spec, bool require_twice_differentiable);

// Weights ~ U(-sqrt(3/fan_in), sqrt(3/fan_in)), biases zero. Bit-reproducible
// for a fixed seed.
ParameterSet InitParams(const MlpSpec& spec, std::uint64_t seed);

// Recovers the layer sizes from parameter shapes (w0, b0, ...). Throws
// InvalidArgument if the set is not a consistent MLP.
MlpSpec InferSpec(const ParameterSet& params, Activation activation);

// Tape handles for one network's parameters.
struct MlpVars {
  std::vector<Var> weights;
  std::vector<Var> biases;

  // Parameter handles in ParameterSet order (w0, b0, w1, b1, ...).
  std::vector<Var> Flat() const;
};

// Binds `params` as differentiable leaves, or as constants when
// `trainable` is false.
MlpVars BindParams(Tape& tape, const ParameterSet& params, const MlpSpec& spec,
                   bool trainable);

// Forward record. `hidden[l]` is the post-activation of hidden layer l and
// `pre[l]` its pre-activation.
struct MlpTrace {
  std::vector<Var> pre;
  std::vector<Var> hidden;
  Var out;
};

MlpTrace MlpForward(const MlpVars& vars, const MlpSpec& spec, Var x);

// Gradient of the (scalar) network output with respect to its input,
// recorded on the tape so it can itself be differentiated with respect to
// the parameters. Requires output_dim == 1. Returns batch x input_dim.
Var MlpInputGradient(const MlpVars& vars, const MlpSpec& spec,
                     const MlpTrace& trace);

// Plain evaluation; rows of `x` are samples.
Matrix Forward(const ParameterSet& params, const MlpSpec& spec,
               const Matrix& x);
Vector Forward(const ParameterSet& params, const MlpSpec& spec,
               const Vector& x);

// d out / d x for a scalar-output network; batch x input_dim.
Matrix InputGradient(const ParameterSet& params, const MlpSpec& spec,
                     const Matrix& x);

// Gradient of V(s, g) with respect to the state block only, where the
// network input is the concatenation [s, g]. Returns batch x dim(s).
Matrix GradInput(const ParameterSet& params, const MlpSpec& spec,
                 const Matrix& states, const Matrix& goals);

struct LossAndGrad {
  double loss = 0.0;
  ParameterSet grad;
};

// A scalar loss built on `tape` from the given parameter leaves (one per
// ParameterSet entry, same order).
using LossFn = std::function<Var(Tape& tape, std::span<const Var> params)>;

// Exact reverse-mode gradient of `loss_fn` at `params`.
LossAndGrad GradParams(const LossFn& loss_fn, const ParameterSet& params);

// Per-sample penalty (batch x 1) of the state gradient grad_s (batch x dim s).
using InputGradPenaltyFn = std::function<Var(Tape& tape, Var grad_s)>;

// d/dtheta of mean_i penalty(grad_s V(s_i, g_i)). The inner gradient is
// recorded on the tape, so the outer reverse pass differentiates through it.
LossAndGrad GradParamsThroughInputGrad(const ParameterSet& params,
                                       const MlpSpec& spec,
                                       const Matrix& states,
                                       const Matrix& goals,
                                       const InputGradPenaltyFn& penalty_fn);

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_MLP_H_
