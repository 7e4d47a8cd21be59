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

#ifndef EIKGCRL_VALUELEARN_LOSSES_H_
#define EIKGCRL_VALUELEARN_LOSSES_H_

#include "eikgcrl/diffcore/adam.h"
#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/diffcore/tape.h"
#include "eikgcrl/mazeworld/goal_sampler.h"
#include "eikgcrl/mazeworld/maze.h"
#include "eikgcrl/valuelearn/config.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::valuelearn {

// Added under the square root of gradient norms so the penalty stays
// differentiable at a zero gradient.
inline constexpr double kNormEpsilon = 1e-30;

// |iota - [x < 0]| * x^2
double ExpectileLoss(double x, double iota);
// Elementwise on a tape; the asymmetric weight is treated as data.
diffcore::Var ExpectileLoss(diffcore::Var residual, double iota);

struct SpeedProfile {
  SpeedKind kind = SpeedKind::kUnit;
  double d_min = 0.4;
  double d_max = 4.0;
  double lambda_decay = 1.0;
  double s_min = 0.1;

  // d_min = 0.1 * cell_size, d_max = cell_size.
  static SpeedProfile For(const TrainConfig& config,
                          const mazeworld::MazeSpec& maze);
};

void ValidateSpeedProfile(const SpeedProfile& profile);
// Speed at obstacle distance `d`.
double Speed(double d, const SpeedProfile& profile);
double Speed(mazeworld::State s, const SpeedProfile& profile,
             const mazeworld::MazeSpec& maze);
// One speed per row of `states`.
Vector Speeds(const Matrix& states, const SpeedProfile& profile,
              const mazeworld::MazeSpec& maze);

// Per-sample penalties of a state gradient (batch x 2) recorded on a tape.
// Eikonal: (||g|| * speed - 1)^2. HJB: (g . displacement - 1)^2.
diffcore::Var EikonalResidual(diffcore::Tape& tape, diffcore::Var grad_s,
                              const Vector& speeds);
diffcore::Var HjbResidual(diffcore::Tape& tape, diffcore::Var grad_s,
                          const Matrix& displacement);

// Inputs of one value update; rows are samples.
struct ValueBatch {
  Matrix states;
  Matrix next_states;
  Matrix goals;
  Vector speeds;  // only read by the Eikonal penalty
};

ValueBatch MakeValueBatch(const mazeworld::Batch& batch, const Vector& speeds);

// r(s, g) + gamma * (1 - done) * V_target(s', g) - V(s, g), done = (r = 0).
// The bootstrap target is data (no gradient).
Vector TdTargets(const ValueField& field, const ValueBatch& batch,
                 double gamma, double goal_radius);

diffcore::LossAndGrad TdValueLoss(const ValueField& field,
                                  const ValueBatch& batch, double gamma,
                                  double iota, double goal_radius);
diffcore::LossAndGrad EikonalPenalty(const ValueField& field,
                                     const ValueBatch& batch);
diffcore::LossAndGrad HjbPenalty(const ValueField& field,
                                 const ValueBatch& batch);

// mean_grad_norm is only filled when the step builds a penalty; otherwise
// it is left at 0 (see MeanGradNorm).
struct ValueStepMetrics {
  double td_loss = 0.0;
  double penalty = 0.0;
  double mean_grad_norm = 0.0;
  double mean_value = 0.0;
};

// One Adam step on TD + lambda_eik * penalty followed by a polyak update of
// the target. With regularizer none or lambda_eik = 0 the penalty is not
// built at all, so both settings follow bitwise identical trajectories.
// Throws NumericalError (with the optimizer step) on a non-finite loss.
ValueStepMetrics CombinedValueStep(ValueField& field, const ValueBatch& batch,
                                   const TrainConfig& config,
                                   double goal_radius,
                                   diffcore::AdamState& adam);

// Same step with externally supplied regression targets in place of the
// TD targets (expectile of a Q estimate, for instance).
ValueStepMetrics ValueStepToTargets(ValueField& field, const ValueBatch& batch,
                                    const Vector& targets,
                                    const TrainConfig& config,
                                    diffcore::AdamState& adam);

// Mean ||grad_s V(s, g)|| of the online network over the batch.
double MeanGradNorm(const ValueField& field, const ValueBatch& batch);

// target <- (1 - tau) * target + tau * online, elementwise.
void PolyakUpdate(diffcore::ParameterSet& target,
                  const diffcore::ParameterSet& online, double tau);

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_LOSSES_H_
