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

#include "eikgcrl/valuelearn/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dynamics.h"

namespace eikgcrl::valuelearn {

using diffcore::LossAndGrad;
using diffcore::ParameterSet;
using diffcore::Tape;
using diffcore::Var;

double ExpectileLoss(double x, double iota) {
  return std::abs(iota - (x < 0.0 ? 1.0 : 0.0)) * x * x;
}

Var ExpectileLoss(Var residual, double iota) {
  const Matrix& r = residual.value();
  Matrix w = r.unaryExpr(
      [iota](double x) { return std::abs(iota - (x < 0.0 ? 1.0 : 0.0)); });
  return Mul(residual.tape()->Constant(std::move(w)), Square(residual));
}

SpeedProfile SpeedProfile::For(const TrainConfig& config,
                               const mazeworld::MazeSpec& maze) {
  SpeedProfile p;
  p.kind = config.speed_profile;
  p.d_min = 0.1 * maze.cell_size();
  p.d_max = maze.cell_size();
  p.lambda_decay = config.lambda_decay;
  p.s_min = config.s_min;
  return p;
}

void ValidateSpeedProfile(const SpeedProfile& p) {
  if (!(p.d_min > 0.0 && p.d_min < p.d_max)) {
    throw InvalidArgument("speed profile needs 0 < d_min < d_max");
  }
  if (!(p.s_min > 0.0 && p.s_min <= 1.0)) {
    throw InvalidArgument("speed profile needs 0 < s_min <= 1");
  }
  if (!(p.lambda_decay >= 0.0)) {
    throw InvalidArgument("speed profile needs lambda_decay >= 0");
  }
}

double Speed(double d, const SpeedProfile& p) {
  switch (p.kind) {
    case SpeedKind::kUnit:
      return 1.0;
    case SpeedKind::kExp: {
      const double dc = std::clamp(d, p.d_min, p.d_max);
      return p.s_min + (1.0 - p.s_min) * std::exp(-p.lambda_decay *
                                                  (p.d_max - dc) /
                                                  (p.d_max - p.d_min));
    }
    case SpeedKind::kLin:
      return std::clamp(d / p.d_max, p.d_min / p.d_max, 1.0);
  }
  return 1.0;
}

double Speed(mazeworld::State s, const SpeedProfile& p,
             const mazeworld::MazeSpec& maze) {
  if (p.kind == SpeedKind::kUnit) return 1.0;
  return Speed(maze.NearestObstacleDistance(s), p);
}

Vector Speeds(const Matrix& states, const SpeedProfile& p,
              const mazeworld::MazeSpec& maze) {
  ValidateSpeedProfile(p);
  Vector out(states.rows());
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    out(i) = Speed({states(i, 0), states(i, 1)}, p, maze);
  }
  return out;
}

Var EikonalResidual(Tape& tape, Var grad_s, const Vector& speeds) {
  if (speeds.size() != grad_s.rows()) {
    throw InvalidArgument("one speed per sample required");
  }
  Var norm = Sqrt(AddScalar(SumCols(Square(grad_s)), kNormEpsilon));
  return Square(AddScalar(MulCol(norm, tape.Constant(speeds)), -1.0));
}

Var HjbResidual(Tape& tape, Var grad_s, const Matrix& displacement) {
  Var dot = SumCols(Mul(grad_s, tape.Constant(displacement)));
  return Square(AddScalar(dot, -1.0));
}

ValueBatch MakeValueBatch(const mazeworld::Batch& batch, const Vector& speeds) {
  return {batch.states, batch.next_states, batch.goals, speeds};
}

Vector TdTargets(const ValueField& field, const ValueBatch& b, double gamma,
                 double goal_radius) {
  const Vector next = field.TargetValue(b.next_states, b.goals);
  Vector out(b.states.rows());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double r = mazeworld::Reward({b.states(i, 0), b.states(i, 1)},
                                       {b.goals(i, 0), b.goals(i, 1)},
                                       goal_radius);
    const bool done = r == 0.0;
    out(i) = done ? r : r + gamma * next(i);
  }
  return out;
}

namespace {

LossAndGrad Collect(Tape& tape, Var loss, const diffcore::MlpVars& vars,
                    const ParameterSet& like) {
  std::vector<Var> flat = vars.Flat();
  std::vector<Matrix> grads = tape.Gradients(loss, flat);
  LossAndGrad out{loss.scalar(), like.ZerosLike()};
  for (std::size_t i = 0; i < grads.size(); ++i) {
    out.grad.mutable_values(i) = std::move(grads[i]);
  }
  return out;
}

Var TdTerm(Tape& tape, const ValueGraph& g, const Vector& targets,
           double iota) {
  Var residual = Sub(tape.Constant(targets), g.value);
  return Mean(ExpectileLoss(residual, iota));
}

}  // namespace

LossAndGrad TdValueLoss(const ValueField& field, const ValueBatch& batch,
                        double gamma, double iota, double goal_radius) {
  Tape tape;
  ValueGraph g = BuildValueGraph(tape, field, batch.states, batch.goals, false);
  Var loss = TdTerm(tape, g, TdTargets(field, batch, gamma, goal_radius), iota);
  return Collect(tape, loss, g.vars, field.online());
}

LossAndGrad EikonalPenalty(const ValueField& field, const ValueBatch& batch) {
  Tape tape;
  ValueGraph g = BuildValueGraph(tape, field, batch.states, batch.goals, true);
  Var loss = Mean(EikonalResidual(tape, g.grad_s, batch.speeds));
  return Collect(tape, loss, g.vars, field.online());
}

LossAndGrad HjbPenalty(const ValueField& field, const ValueBatch& batch) {
  Tape tape;
  ValueGraph g = BuildValueGraph(tape, field, batch.states, batch.goals, true);
  Var loss = Mean(
      HjbResidual(tape, g.grad_s, batch.next_states - batch.states));
  return Collect(tape, loss, g.vars, field.online());
}

ValueStepMetrics CombinedValueStep(ValueField& field, const ValueBatch& batch,
                                   const TrainConfig& config,
                                   double goal_radius,
                                   diffcore::AdamState& adam) {
  return ValueStepToTargets(field, batch,
                            TdTargets(field, batch, config.gamma, goal_radius),
                            config, adam);
}

ValueStepMetrics ValueStepToTargets(ValueField& field, const ValueBatch& batch,
                                    const Vector& targets,
                                    const TrainConfig& config,
                                    diffcore::AdamState& adam) {
  if (targets.size() != batch.states.rows()) {
    throw InvalidArgument("one value target per sample required");
  }
  const bool penalized =
      config.regularizer != Regularizer::kNone && config.lambda_eik != 0.0;
  Tape tape;
  ValueGraph g =
      BuildValueGraph(tape, field, batch.states, batch.goals, penalized);
  Var td = TdTerm(tape, g, targets, config.iota);
  Var loss = td;
  ValueStepMetrics m;
  if (penalized) {
    Var pen = config.regularizer == Regularizer::kEikonal
                  ? EikonalResidual(tape, g.grad_s, batch.speeds)
                  : HjbResidual(tape, g.grad_s,
                                batch.next_states - batch.states);
    Var pen_mean = Mean(pen);
    loss = td + config.lambda_eik * pen_mean;
    m.penalty = pen_mean.scalar();
    m.mean_grad_norm = g.grad_s.value().rowwise().norm().mean();
  }
  m.td_loss = td.scalar();
  m.mean_value = g.value.value().mean();
  LossAndGrad lg;
  try {
    lg = Collect(tape, loss, g.vars, field.online());
    diffcore::AdamStep(field.mutable_online(), lg.grad, adam, config.lr_v);
  } catch (const NumericalError& e) {
    throw NumericalError("value step " + std::to_string(adam.step + 1) +
                         ": " + e.what());
  }
  PolyakUpdate(field.mutable_target(), field.online(), config.tau);
  return m;
}

double MeanGradNorm(const ValueField& field, const ValueBatch& batch) {
  return field.GradState(batch.states, batch.goals).rowwise().norm().mean();
}

void PolyakUpdate(ParameterSet& target, const ParameterSet& online,
                  double tau) {
  if (!target.SameLayout(online)) {
    throw InvalidArgument("polyak update needs matching layouts");
  }
  for (std::size_t i = 0; i < target.size(); ++i) {
    target.mutable_values(i) =
        (1.0 - tau) * target.values(i).array() + tau * online.values(i).array();
  }
}

}  // namespace eikgcrl::valuelearn
