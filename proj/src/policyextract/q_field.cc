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

#include "eikgcrl/policyextract/q_field.h"

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dynamics.h"
#include "eikgcrl/valuelearn/losses.h"

namespace eikgcrl::policyextract {

using diffcore::Activation;
using diffcore::LossAndGrad;
using diffcore::MlpSpec;
using diffcore::ParameterSet;
using diffcore::Tape;
using diffcore::Var;

QField::QField(MlpSpec spec, valuelearn::InputNorm norm, double action_scale,
               double value_scale, std::uint64_t seed)
    : QField(spec, norm, action_scale, value_scale,
             diffcore::InitParams(spec, seed),
             diffcore::InitParams(spec, seed)) {}

QField::QField(MlpSpec spec, valuelearn::InputNorm norm, double action_scale,
               double value_scale, ParameterSet online, ParameterSet target)
    : spec_(std::move(spec)),
      norm_(norm),
      action_scale_(action_scale),
      value_scale_(value_scale),
      online_(std::move(online)),
      target_(std::move(target)) {
  diffcore::ValidateSpec(spec_, false);
  if (spec_.input_dim != 6 || spec_.output_dim != 1) {
    throw InvalidArgument("Q network must map 6 inputs to 1 output");
  }
  if (!(action_scale_ > 0.0) || !(value_scale_ > 0.0)) {
    throw InvalidArgument("Q scales must be > 0");
  }
  const ParameterSet fresh = diffcore::InitParams(spec_, 0);
  if (!online_.SameLayout(fresh) || !target_.SameLayout(fresh)) {
    throw InvalidArgument("Q parameters do not match the network spec");
  }
}

Matrix QField::Input(const Matrix& states, const Matrix& actions,
                     const Matrix& goals) const {
  if (states.cols() != 2 || actions.cols() != 2 || goals.cols() != 2 ||
      states.rows() != actions.rows() || states.rows() != goals.rows()) {
    throw InvalidArgument("Q inputs must be matching batch x 2 blocks");
  }
  Matrix x(states.rows(), 6);
  x << norm_.Apply(states), actions / action_scale_, norm_.Apply(goals);
  return x;
}

Vector QField::Value(const Matrix& states, const Matrix& actions,
                     const Matrix& goals) const {
  return value_scale_ *
         diffcore::Forward(online_, spec_, Input(states, actions, goals)).col(0);
}

Vector QField::TargetValue(const Matrix& states, const Matrix& actions,
                           const Matrix& goals) const {
  return value_scale_ *
         diffcore::Forward(target_, spec_, Input(states, actions, goals)).col(0);
}

MlpSpec QSpec(const std::vector<int>& hidden_dims, Activation activation) {
  return {6, hidden_dims, 1, activation};
}

Vector QBellmanTargets(const valuelearn::ValueField& value,
                       const Matrix& states, const Matrix& next_states,
                       const Matrix& goals, double gamma, double goal_radius) {
  const Vector next = value.Value(next_states, goals);
  Vector out(states.rows());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double r = mazeworld::Reward({states(i, 0), states(i, 1)},
                                       {goals(i, 0), goals(i, 1)}, goal_radius);
    out(i) = r == 0.0 ? r : r + gamma * next(i);
  }
  return out;
}

LossAndGrad QBellmanLoss(const QField& q, const Matrix& states,
                         const Matrix& actions, const Matrix& goals,
                         const Vector& targets) {
  if (targets.size() != states.rows()) {
    throw InvalidArgument("one Q target per sample required");
  }
  const Matrix x = q.Input(states, actions, goals);
  const MlpSpec spec = q.spec();
  const double scale = q.value_scale();
  auto loss_fn = [&](Tape& tape, std::span<const Var> leaves) {
    diffcore::MlpVars vars;
    for (std::size_t l = 0; l + 1 < leaves.size(); l += 2) {
      vars.weights.push_back(leaves[l]);
      vars.biases.push_back(leaves[l + 1]);
    }
    Var out = Scale(diffcore::MlpForward(vars, spec, tape.Constant(x)).out, scale);
    return Mean(Square(Sub(tape.Constant(targets), out)));
  };
  return diffcore::GradParams(loss_fn, q.online());
}

double QBellmanStep(QField& q, const Matrix& states, const Matrix& actions,
                    const Matrix& goals, const Vector& targets, double lr,
                    double tau, diffcore::AdamState& adam) {
  LossAndGrad lg = QBellmanLoss(q, states, actions, goals, targets);
  try {
    diffcore::AdamStep(q.mutable_online(), lg.grad, adam, lr);
  } catch (const NumericalError& e) {
    throw NumericalError("Q step " + std::to_string(adam.step + 1) + ": " +
                         e.what());
  }
  valuelearn::PolyakUpdate(q.mutable_target(), q.online(), tau);
  return lg.loss;
}

ParameterSet QFieldToParams(const QField& q, const std::string& prefix) {
  ParameterSet out;
  out.Merge(q.online(), prefix + "online/");
  out.Merge(q.target(), prefix + "target/");
  Matrix meta(1, 6);
  meta << q.norm().shift_x, q.norm().shift_y, q.norm().scale, q.action_scale(),
      q.value_scale(), static_cast<double>(q.spec().activation);
  out.Add(prefix + "meta", {6}, meta);
  return out;
}

QField QFieldFromParams(const ParameterSet& params, const std::string& prefix) {
  if (!params.Contains(prefix + "meta")) {
    throw CorruptArtifact("checkpoint lacks " + prefix + "meta");
  }
  const Matrix& meta = params.values(prefix + "meta");
  if (meta.size() != 6) throw CorruptArtifact("bad Q meta entry");
  const int code = static_cast<int>(meta(0, 5));
  if (code < 0 || code > 2 || code != meta(0, 5)) {
    throw CorruptArtifact("bad activation code in Q checkpoint");
  }
  try {
    ParameterSet online = params.WithPrefixStripped(prefix + "online/");
    ParameterSet target = params.WithPrefixStripped(prefix + "target/");
    MlpSpec spec = diffcore::InferSpec(online, static_cast<Activation>(code));
    return QField(spec, {meta(0, 0), meta(0, 1), meta(0, 2)}, meta(0, 3),
                  meta(0, 4), std::move(online), std::move(target));
  } catch (const InvalidArgument& e) {
    throw CorruptArtifact(std::string("Q network: ") + e.what());
  }
}

}  // namespace eikgcrl::policyextract
