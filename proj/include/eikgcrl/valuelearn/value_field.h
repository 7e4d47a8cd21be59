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

#ifndef EIKGCRL_VALUELEARN_VALUE_FIELD_H_
#define EIKGCRL_VALUELEARN_VALUE_FIELD_H_

#include <cstdint>
#include <functional>

#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/diffcore/parameter_set.h"
#include "eikgcrl/diffcore/tape.h"
#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::valuelearn {

using diffcore::Matrix;
using diffcore::Vector;

// Fixed affine map of maze coordinates into roughly [-1, 1]: the same
// isotropic scale on both axes so gradient directions are preserved.
struct InputNorm {
  double shift_x = 0.0;
  double shift_y = 0.0;
  double scale = 1.0;

  static InputNorm ForMaze(const mazeworld::MazeSpec& maze);
  // Rows are (x, y).
  Matrix Apply(const Matrix& points) const;

  friend bool operator==(const InputNorm&, const InputNorm&) = default;
};

// V(s, g) = value_scale * net([norm(s), norm(g)]) with an online network
// and a slowly tracking target copy.
class ValueField {
 public:
  ValueField(diffcore::MlpSpec spec, InputNorm norm, double value_scale,
             std::uint64_t seed);
  // Throws InvalidArgument if the parameter layouts do not match `spec`.
  ValueField(diffcore::MlpSpec spec, InputNorm norm, double value_scale,
             diffcore::ParameterSet online, diffcore::ParameterSet target);

  const diffcore::MlpSpec& spec() const { return spec_; }
  const InputNorm& norm() const { return norm_; }
  double value_scale() const { return value_scale_; }
  const diffcore::ParameterSet& online() const { return online_; }
  const diffcore::ParameterSet& target() const { return target_; }
  diffcore::ParameterSet& mutable_online() { return online_; }
  diffcore::ParameterSet& mutable_target() { return target_; }

  // Network input for (states, goals); both batch x 2.
  Matrix Input(const Matrix& states, const Matrix& goals) const;

  Vector Value(const Matrix& states, const Matrix& goals) const;
  Vector TargetValue(const Matrix& states, const Matrix& goals) const;
  // grad_s V(s, g) of the online network; batch x 2.
  Matrix GradState(const Matrix& states, const Matrix& goals) const;

 private:
  diffcore::MlpSpec spec_;
  InputNorm norm_;
  double value_scale_;
  diffcore::ParameterSet online_;
  diffcore::ParameterSet target_;
};

// V(s, g) for rows of states and goals (both batch x 2).
using ValueQuery = std::function<Vector(const Matrix&, const Matrix&)>;
// grad_s V(s, g), batch x 2.
using GradQuery = std::function<Matrix(const Matrix&, const Matrix&)>;

// Online network queries; `field` must outlive the returned functions.
ValueQuery OnlineValue(const ValueField& field);
GradQuery OnlineGrad(const ValueField& field);

// Value spec for 2-D states and goals.
diffcore::MlpSpec ValueSpec(const std::vector<int>& hidden_dims,
                            diffcore::Activation activation);

// Online V(s, g) recorded on a tape. `grad_s` (batch x 2) is only built when
// requested and stays differentiable with respect to the parameters.
struct ValueGraph {
  diffcore::MlpVars vars;
  diffcore::Var value;
  diffcore::Var grad_s;
};

ValueGraph BuildValueGraph(diffcore::Tape& tape, const ValueField& field,
                           const Matrix& states, const Matrix& goals,
                           bool with_grad_s);

// Checkpoint entries: `<prefix>online/...`, `<prefix>target/...` and
// `<prefix>meta/norm` = [shift_x, shift_y, scale, value_scale, activation].
diffcore::ParameterSet ValueFieldToParams(const ValueField& field,
                                          const std::string& prefix);
// Throws CorruptArtifact when entries are missing or inconsistent.
ValueField ValueFieldFromParams(const diffcore::ParameterSet& params,
                                const std::string& prefix);

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_VALUE_FIELD_H_
