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

#ifndef EIKGCRL_POLICYEXTRACT_GAUSSIAN_POLICY_H_
#define EIKGCRL_POLICYEXTRACT_GAUSSIAN_POLICY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/mazeworld/maze.h"
#include "eikgcrl/rng.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::policyextract {

using diffcore::Matrix;
using diffcore::Vector;

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 2.0;

// Diagonal Gaussian over a 2-D output conditioned on (state, condition),
// where the condition is a goal or a subgoal. The network works in a
// normalized output space z; raw outputs are out_shift + out_scale * z.
// Log-std is a trainable per-dimension constant in z space.
struct GaussianPolicy {
  diffcore::MlpSpec spec;
  valuelearn::InputNorm norm;
  Vector out_shift;
  double out_scale = 1.0;
  // Raw outputs are clipped into the box [lo, hi], then onto the disc of
  // radius max_norm when max_norm > 0.
  Vector lo;
  Vector hi;
  double max_norm = 0.0;
  diffcore::ParameterSet net;
  Vector log_std;
};

// Actions: z = a / max_action, box and disc bounds of max_action.
GaussianPolicy MakeActionPolicy(const std::vector<int>& hidden_dims,
                                diffcore::Activation activation,
                                const mazeworld::MazeSpec& maze,
                                double max_action, std::uint64_t seed);
// Subgoals: z = normalized maze coordinates, clipped to the maze extent.
GaussianPolicy MakeSubgoalPolicy(const std::vector<int>& hidden_dims,
                                 diffcore::Activation activation,
                                 const mazeworld::MazeSpec& maze,
                                 std::uint64_t seed);

// Network input [norm(s), norm(c)].
Matrix PolicyInput(const GaussianPolicy& p, const Matrix& states,
                   const Matrix& conds);
// Raw-unit mean, not clipped.
Matrix PolicyMean(const GaussianPolicy& p, const Matrix& states,
                  const Matrix& conds);
Vector ClampedLogStd(const GaussianPolicy& p);
Matrix ClipOutputs(const GaussianPolicy& p, Matrix raw);
// Clipped mean, or a clipped sample when !deterministic.
Matrix PolicyOutputs(const GaussianPolicy& p, const Matrix& states,
                     const Matrix& conds, bool deterministic, Rng& rng);
// Per-sample log density of raw `targets` measured in z space.
Vector LogLikelihood(const GaussianPolicy& p, const Matrix& states,
                     const Matrix& conds, const Matrix& targets);

// Trainable parameters: the network entries followed by "log_std".
diffcore::ParameterSet PolicyParams(const GaussianPolicy& p);
void SetPolicyParams(GaussianPolicy& p, const diffcore::ParameterSet& params);

// -mean_i w_i log N(z_i; mu_i, sigma). Weights are data. Gradient layout
// follows PolicyParams.
diffcore::LossAndGrad WeightedNllLoss(const GaussianPolicy& p,
                                      const Matrix& states,
                                      const Matrix& conds,
                                      const Matrix& targets,
                                      const Vector& weights);

// Checkpoint entries `<prefix>net/...`, `<prefix>log_std` and
// `<prefix>meta` holding the normalization and bounds.
diffcore::ParameterSet PolicyToParams(const GaussianPolicy& p,
                                      const std::string& prefix);
// Throws CorruptArtifact when entries are missing or inconsistent.
GaussianPolicy PolicyFromParams(const diffcore::ParameterSet& params,
                                const std::string& prefix);

}  // namespace eikgcrl::policyextract

#endif  // EIKGCRL_POLICYEXTRACT_GAUSSIAN_POLICY_H_
