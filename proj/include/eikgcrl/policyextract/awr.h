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

#ifndef EIKGCRL_POLICYEXTRACT_AWR_H_
#define EIKGCRL_POLICYEXTRACT_AWR_H_

#include <string>

#include "eikgcrl/mazeworld/goal_sampler.h"
#include "eikgcrl/policyextract/gaussian_policy.h"
#include "eikgcrl/policyextract/q_field.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::policyextract {

// min(exp(beta * adv), clip_max).
double AwrWeight(double advantage, double beta, double clip_max);
Vector AwrWeights(const Vector& advantages, double beta, double clip_max);

struct AwrLoss {
  double loss = 0.0;
  diffcore::ParameterSet grad;  // PolicyParams layout
  Vector advantages;
  Vector weights;
};

// Subgoal regression toward s_{t+k}, advantage V(s_{t+k}, g) - V(s_t, g).
AwrLoss HighPolicyLoss(const GaussianPolicy& high,
                       const valuelearn::ValueField& value,
                       const mazeworld::Batch& batch, double beta,
                       double clip_max);
// Action regression conditioned on s_{t+k}, advantage
// V(s_{t+1}, s_{t+k}) - V(s_t, s_{t+k}).
AwrLoss LowPolicyLoss(const GaussianPolicy& low,
                      const valuelearn::ValueField& value,
                      const mazeworld::Batch& batch, double beta,
                      double clip_max);
// Goal-conditioned action regression, advantage V(s', g) - V(s, g).
AwrLoss FlatPolicyLoss(const GaussianPolicy& policy,
                       const valuelearn::ValueField& value,
                       const mazeworld::Batch& batch, double beta,
                       double clip_max);
// Same with advantage Q(s, a, g) - V(s, g).
AwrLoss FlatPolicyLoss(const GaussianPolicy& policy,
                       const valuelearn::ValueField& value, const QField& q,
                       const mazeworld::Batch& batch, double beta,
                       double clip_max);

using valuelearn::ValueQuery;

struct RescalingReport {
  bool passed = false;
  int sign_flips = 0;
  int order_flips = 0;
  int argmax_changes = 0;
  // max |log w_c - c log w| over samples with both weights below the clip.
  double max_log_weight_error = 0.0;
  std::string message;
};

// Compares V with c * V: one-step advantages V(s', g) - V(s, g) must keep
// their signs and pairwise order, AWR weights must become w^c below the
// clip, and for every goal the best of `candidates` must not change.
// Differences below 1e-9 relative to max |V| on the probe count as ties.
RescalingReport RescalingArgmaxCheck(const ValueQuery& value, double c,
                                     const Matrix& states,
                                     const Matrix& next_states,
                                     const Matrix& goals,
                                     const Matrix& candidates, double beta,
                                     double clip_max);

}  // namespace eikgcrl::policyextract

#endif  // EIKGCRL_POLICYEXTRACT_AWR_H_
