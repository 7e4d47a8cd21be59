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

#include "eikgcrl/policyextract/gaussian_policy.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eikgcrl/errors.h"

namespace eikgcrl::policyextract {

using diffcore::Activation;
using diffcore::LossAndGrad;
using diffcore::MlpSpec;
using diffcore::ParameterSet;
using diffcore::Tape;
using diffcore::Var;

namespace {

constexpr int kMetaSize = 13;

GaussianPolicy MakePolicy(const std::vector<int>& hidden_dims,
                          Activation activation,
                          const mazeworld::MazeSpec& maze,
                          std::uint64_t seed) {
  GaussianPolicy p;
  p.spec = {4, hidden_dims, 2, activation};
  diffcore::ValidateSpec(p.spec, false);
  p.norm = valuelearn::InputNorm::ForMaze(maze);
  p.net = diffcore::InitParams(p.spec, seed);
  p.log_std = Vector::Zero(2);
  return p;
}

}  // namespace

GaussianPolicy MakeActionPolicy(const std::vector<int>& hidden_dims,
                                Activation activation,
                                const mazeworld::MazeSpec& maze,
                                double max_action, std::uint64_t seed) {
  if (!(max_action > 0.0)) throw InvalidArgument("max_action must be > 0");
  GaussianPolicy p = MakePolicy(hidden_dims, activation, maze, seed);
  p.out_shift = Vector::Zero(2);
  p.out_scale = max_action;
  p.lo = Vector::Constant(2, -max_action);
  p.hi = Vector::Constant(2, max_action);
  p.max_norm = max_action;
  return p;
}

GaussianPolicy MakeSubgoalPolicy(const std::vector<int>& hidden_dims,
                                 Activation activation,
                                 const mazeworld::MazeSpec& maze,
                                 std::uint64_t seed) {
  GaussianPolicy p = MakePolicy(hidden_dims, activation, maze, seed);
  p.out_shift = Vector(2);
  p.out_shift << p.norm.shift_x, p.norm.shift_y;
  p.out_scale = 1.0 / p.norm.scale;
  p.lo = Vector::Zero(2);
  p.hi = Vector(2);
  p.hi << maze.extent_x(), maze.extent_y();
  return p;
}

Matrix PolicyInput(const GaussianPolicy& p, const Matrix& states,
                   const Matrix& conds) {
  if (states.cols() != 2 || conds.cols() != 2 ||
      states.rows() != conds.rows()) {
    throw InvalidArgument("policy inputs must be matching batch x 2 blocks");
  }
  Matrix x(states.rows(), 4);
  x << p.norm.Apply(states), p.norm.Apply(conds);
  return x;
}

namespace {

Matrix ToRaw(const GaussianPolicy& p, const Matrix& z) {
  return (p.out_scale * z).rowwise() + p.out_shift.transpose();
}

Matrix ToZ(const GaussianPolicy& p, const Matrix& raw) {
  return (raw.rowwise() - p.out_shift.transpose()) / p.out_scale;
}

}  // namespace

Matrix PolicyMean(const GaussianPolicy& p, const Matrix& states,
                  const Matrix& conds) {
  return ToRaw(p, diffcore::Forward(p.net, p.spec, PolicyInput(p, states, conds)));
}

Vector ClampedLogStd(const GaussianPolicy& p) {
  return p.log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
}

Matrix ClipOutputs(const GaussianPolicy& p, Matrix raw) {
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    for (Eigen::Index d = 0; d < raw.cols(); ++d) {
      raw(i, d) = std::clamp(raw(i, d), p.lo(d), p.hi(d));
    }
    if (p.max_norm > 0.0) {
      const double n = raw.row(i).norm();
      if (n > p.max_norm) raw.row(i) *= p.max_norm / n;
    }
  }
  return raw;
}

Matrix PolicyOutputs(const GaussianPolicy& p, const Matrix& states,
                     const Matrix& conds, bool deterministic, Rng& rng) {
  Matrix out = PolicyMean(p, states, conds);
  if (!deterministic) {
    const Vector sigma = ClampedLogStd(p).array().exp();
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index d = 0; d < out.cols(); ++d) {
        out(i, d) += p.out_scale * sigma(d) * normal(rng);
      }
    }
  }
  return ClipOutputs(p, std::move(out));
}

Vector LogLikelihood(const GaussianPolicy& p, const Matrix& states,
                     const Matrix& conds, const Matrix& targets) {
  const Matrix mu = diffcore::Forward(p.net, p.spec, PolicyInput(p, states, conds));
  const Matrix z = ToZ(p, targets);
  const Vector ls = ClampedLogStd(p);
  const Eigen::RowVectorXd inv = (-ls).array().exp().transpose();
  const Matrix u = (z - mu).array().rowwise() * inv.array();
  const double c = ls.sum() + 0.5 * ls.size() * std::log(2 * std::numbers::pi);
  return (-0.5 * u.rowwise().squaredNorm()).array() - c;
}

ParameterSet PolicyParams(const GaussianPolicy& p) {
  ParameterSet out = p.net;
  out.Add("log_std", {static_cast<std::uint32_t>(p.log_std.size())},
          p.log_std.transpose());
  return out;
}

void SetPolicyParams(GaussianPolicy& p, const ParameterSet& params) {
  if (params.size() != p.net.size() + 1) {
    throw InvalidArgument("policy parameter count mismatch");
  }
  for (std::size_t i = 0; i < p.net.size(); ++i) {
    if (params.values(i).rows() != p.net.values(i).rows() ||
        params.values(i).cols() != p.net.values(i).cols()) {
      throw InvalidArgument("policy parameter shape mismatch");
    }
    p.net.mutable_values(i) = params.values(i);
  }
  const Matrix& ls = params.values(p.net.size());
  if (ls.size() != p.log_std.size()) {
    throw InvalidArgument("policy log_std shape mismatch");
  }
  p.log_std = ls.transpose();
}

LossAndGrad WeightedNllLoss(const GaussianPolicy& p, const Matrix& states,
                            const Matrix& conds, const Matrix& targets,
                            const Vector& weights) {
  if (targets.rows() != states.rows() || weights.size() != states.rows() ||
      targets.cols() != 2) {
    throw InvalidArgument("policy loss batch shapes disagree");
  }
  const Matrix x = PolicyInput(p, states, conds);
  const Matrix z = ToZ(p, targets);
  const double mean_w = weights.mean();
  const double log2pi = std::log(2 * std::numbers::pi);
  const MlpSpec spec = p.spec;
  const std::size_t n_net = p.net.size();
  auto loss_fn = [&](Tape& tape, std::span<const Var> leaves) {
    diffcore::MlpVars vars;
    for (std::size_t l = 0; l + 1 < n_net; l += 2) {
      vars.weights.push_back(leaves[l]);
      vars.biases.push_back(leaves[l + 1]);
    }
    Var mu = diffcore::MlpForward(vars, spec, tape.Constant(x)).out;
    Var ls = Clip(leaves[n_net], kLogStdMin, kLogStdMax);
    Var u = MulRow(Sub(tape.Constant(z), mu), Exp(Neg(ls)));
    Var sq = SumCols(Square(u));
    Var data = Scale(Mean(Mul(tape.Constant(weights), sq)), 0.5);
    Var norm = AddScalar(Scale(Sum(ls), mean_w), 0.5 * z.cols() * log2pi * mean_w);
    return Add(data, norm);
  };
  return diffcore::GradParams(loss_fn, PolicyParams(p));
}

ParameterSet PolicyToParams(const GaussianPolicy& p, const std::string& prefix) {
  ParameterSet out;
  out.Merge(p.net, prefix + "net/");
  out.Add(prefix + "log_std", {2}, p.log_std.transpose());
  Matrix meta(1, kMetaSize);
  meta << p.norm.shift_x, p.norm.shift_y, p.norm.scale, p.out_shift(0),
      p.out_shift(1), p.out_scale, p.lo(0), p.lo(1), p.hi(0), p.hi(1),
      p.max_norm, static_cast<double>(p.spec.activation),
      static_cast<double>(p.spec.input_dim);
  out.Add(prefix + "meta", {kMetaSize}, meta);
  return out;
}

GaussianPolicy PolicyFromParams(const ParameterSet& params,
                                const std::string& prefix) {
  for (const char* name : {"meta", "log_std"}) {
    if (!params.Contains(prefix + name)) {
      throw CorruptArtifact("checkpoint lacks " + prefix + name);
    }
  }
  const Matrix& meta = params.values(prefix + "meta");
  const Matrix& ls = params.values(prefix + "log_std");
  if (meta.size() != kMetaSize || ls.size() != 2) {
    throw CorruptArtifact("bad policy entries under " + prefix);
  }
  const int code = static_cast<int>(meta(0, 11));
  if (code < 0 || code > 2 || code != meta(0, 11) || meta(0, 12) != 4 ||
      !(meta(0, 2) > 0.0) || !(meta(0, 5) > 0.0)) {
    throw CorruptArtifact("bad policy meta under " + prefix);
  }
  GaussianPolicy p;
  try {
    p.net = params.WithPrefixStripped(prefix + "net/");
    p.spec = diffcore::InferSpec(p.net, static_cast<Activation>(code));
  } catch (const InvalidArgument& e) {
    throw CorruptArtifact("policy network " + prefix + ": " + e.what());
  }
  if (p.spec.input_dim != 4 || p.spec.output_dim != 2) {
    throw CorruptArtifact("policy network " + prefix + " has wrong io dims");
  }
  p.norm = {meta(0, 0), meta(0, 1), meta(0, 2)};
  p.out_shift = Vector(2);
  p.out_shift << meta(0, 3), meta(0, 4);
  p.out_scale = meta(0, 5);
  p.lo = Vector(2);
  p.lo << meta(0, 6), meta(0, 7);
  p.hi = Vector(2);
  p.hi << meta(0, 8), meta(0, 9);
  p.max_norm = meta(0, 10);
  p.log_std = ls.transpose();
  return p;
}

}  // namespace eikgcrl::policyextract
