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

#include "eikgcrl/policyextract/awr.h"

#include <algorithm>
#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::policyextract {

double AwrWeight(double advantage, double beta, double clip_max) {
  if (std::isnan(advantage)) throw NumericalError("advantage is NaN");
  return std::min(std::exp(beta * advantage), clip_max);
}

Vector AwrWeights(const Vector& advantages, double beta, double clip_max) {
  Vector w(advantages.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = AwrWeight(advantages(i), beta, clip_max);
  }
  return w;
}

namespace {

AwrLoss Finish(const GaussianPolicy& p, const Matrix& states,
               const Matrix& conds, const Matrix& targets, Vector adv,
               double beta, double clip_max) {
  AwrLoss out;
  out.weights = AwrWeights(adv, beta, clip_max);
  out.advantages = std::move(adv);
  diffcore::LossAndGrad lg =
      WeightedNllLoss(p, states, conds, targets, out.weights);
  out.loss = lg.loss;
  out.grad = std::move(lg.grad);
  return out;
}

}  // namespace

AwrLoss HighPolicyLoss(const GaussianPolicy& high,
                       const valuelearn::ValueField& value,
                       const mazeworld::Batch& b, double beta,
                       double clip_max) {
  Vector adv = value.Value(b.subgoals, b.goals) - value.Value(b.states, b.goals);
  return Finish(high, b.states, b.goals, b.subgoals, std::move(adv), beta,
                clip_max);
}

AwrLoss LowPolicyLoss(const GaussianPolicy& low,
                      const valuelearn::ValueField& value,
                      const mazeworld::Batch& b, double beta,
                      double clip_max) {
  Vector adv = value.Value(b.next_states, b.subgoals) -
               value.Value(b.states, b.subgoals);
  return Finish(low, b.states, b.subgoals, b.actions, std::move(adv), beta,
                clip_max);
}

AwrLoss FlatPolicyLoss(const GaussianPolicy& policy,
                       const valuelearn::ValueField& value,
                       const mazeworld::Batch& b, double beta,
                       double clip_max) {
  Vector adv =
      value.Value(b.next_states, b.goals) - value.Value(b.states, b.goals);
  return Finish(policy, b.states, b.goals, b.actions, std::move(adv), beta,
                clip_max);
}

AwrLoss FlatPolicyLoss(const GaussianPolicy& policy,
                       const valuelearn::ValueField& value, const QField& q,
                       const mazeworld::Batch& b, double beta,
                       double clip_max) {
  Vector adv = q.Value(b.states, b.actions, b.goals) -
               value.Value(b.states, b.goals);
  return Finish(policy, b.states, b.goals, b.actions, std::move(adv), beta,
                clip_max);
}

RescalingReport RescalingArgmaxCheck(const ValueQuery& value, double c,
                                     const Matrix& states,
                                     const Matrix& next_states,
                                     const Matrix& goals,
                                     const Matrix& candidates, double beta,
                                     double clip_max) {
  if (!(c > 0.0)) throw InvalidArgument("rescaling factor must be > 0");
  if (candidates.rows() < 1) throw InvalidArgument("need candidate subgoals");
  RescalingReport rep;
  const Vector v_next = value(next_states, goals);
  const Vector v_now = value(states, goals);
  const Vector adv = v_next - v_now;
  const Vector adv_c = c * v_next - c * v_now;
  const double v_max =
      std::max(v_next.cwiseAbs().maxCoeff(), v_now.cwiseAbs().maxCoeff());
  const double tie = 1e-9 * std::max(1.0, v_max);
  const Eigen::Index n = adv.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(adv(i)) > tie && (adv(i) > 0) != (adv_c(i) > 0)) {
      ++rep.sign_flips;
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = adv(i) - adv(j);
      if (std::abs(d) > tie && (d > 0) != (adv_c(i) - adv_c(j) > 0)) {
        ++rep.order_flips;
      }
    }
    const double w = AwrWeight(adv(i), beta, clip_max);
    const double wc = AwrWeight(adv_c(i), beta, clip_max);
    if (w < clip_max && wc < clip_max) {
      rep.max_log_weight_error = std::max(
          rep.max_log_weight_error, std::abs(std::log(wc) - c * std::log(w)));
    }
  }
  // Best candidate per goal.
  const Eigen::Index m = candidates.rows();
  for (Eigen::Index i = 0; i < goals.rows(); ++i) {
    const Matrix g = goals.row(i).replicate(m, 1);
    const Vector v = value(candidates, g);
    const Vector vc = c * v;
    Eigen::Index best = 0, best_c = 0;
    v.maxCoeff(&best);
    vc.maxCoeff(&best_c);
    if (best != best_c && v(best) - v(best_c) > tie) ++rep.argmax_changes;
  }
  const double weight_tol = 1e-9 * std::max(1.0, c * beta * v_max);
  rep.passed = rep.sign_flips == 0 && rep.order_flips == 0 &&
               rep.argmax_changes == 0 &&
               rep.max_log_weight_error <= weight_tol;
  if (!rep.passed) {
    rep.message = "rescaling changed " + std::to_string(rep.sign_flips) +
                  " signs, " + std::to_string(rep.order_flips) +
                  " orderings, " + std::to_string(rep.argmax_changes) +
                  " argmaxes; max log-weight error " +
                  std::to_string(rep.max_log_weight_error);
  }
  return rep;
}

}  // namespace eikgcrl::policyextract
