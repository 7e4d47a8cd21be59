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

#ifndef EIKGCRL_POLICYEXTRACT_Q_FIELD_H_
#define EIKGCRL_POLICYEXTRACT_Q_FIELD_H_

#include <cstdint>
#include <string>

#include "eikgcrl/diffcore/adam.h"
#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::policyextract {

using diffcore::Matrix;
using diffcore::Vector;

// Q(s, a, g) = value_scale * net([norm(s), a / action_scale, norm(g)]) with
// a polyak-tracked target copy.
class QField {
 public:
  QField(diffcore::MlpSpec spec, valuelearn::InputNorm norm,
         double action_scale, double value_scale, std::uint64_t seed);
  QField(diffcore::MlpSpec spec, valuelearn::InputNorm norm,
         double action_scale, double value_scale,
         diffcore::ParameterSet online, diffcore::ParameterSet target);

  const diffcore::MlpSpec& spec() const { return spec_; }
  const valuelearn::InputNorm& norm() const { return norm_; }
  double action_scale() const { return action_scale_; }
  double value_scale() const { return value_scale_; }
  const diffcore::ParameterSet& online() const { return online_; }
  const diffcore::ParameterSet& target() const { return target_; }
  diffcore::ParameterSet& mutable_online() { return online_; }
  diffcore::ParameterSet& mutable_target() { return target_; }

  Matrix Input(const Matrix& states, const Matrix& actions,
               const Matrix& goals) const;
  Vector Value(const Matrix& states, const Matrix& actions,
               const Matrix& goals) const;
  Vector TargetValue(const Matrix& states, const Matrix& actions,
                     const Matrix& goals) const;

 private:
  diffcore::MlpSpec spec_;
  valuelearn::InputNorm norm_;
  double action_scale_;
  double value_scale_;
  diffcore::ParameterSet online_;
  diffcore::ParameterSet target_;
};

diffcore::MlpSpec QSpec(const std::vector<int>& hidden_dims,
                        diffcore::Activation activation);

// r(s, g) + gamma * (1 - done) * V(s', g), done = (r = 0), online V.
Vector QBellmanTargets(const valuelearn::ValueField& value,
                       const Matrix& states, const Matrix& next_states,
                       const Matrix& goals, double gamma, double goal_radius);

// mean (targets - Q(s, a, g))^2 and its gradient.
diffcore::LossAndGrad QBellmanLoss(const QField& q, const Matrix& states,
                                   const Matrix& actions, const Matrix& goals,
                                   const Vector& targets);

// One Adam step on QBellmanLoss then a polyak update of the target. Returns
// the loss. Throws NumericalError on non-finite gradients.
double QBellmanStep(QField& q, const Matrix& states, const Matrix& actions,
                    const Matrix& goals, const Vector& targets, double lr,
                    double tau, diffcore::AdamState& adam);

// Entries `<prefix>online/`, `<prefix>target/`, `<prefix>meta`.
diffcore::ParameterSet QFieldToParams(const QField& q,
                                      const std::string& prefix);
QField QFieldFromParams(const diffcore::ParameterSet& params,
                        const std::string& prefix);

}  // namespace eikgcrl::policyextract

#endif  // EIKGCRL_POLICYEXTRACT_Q_FIELD_H_
