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

#include "eikgcrl/valuelearn/value_field.h"

#include <algorithm>
#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::valuelearn {

using diffcore::Activation;
using diffcore::MlpSpec;
using diffcore::ParameterSet;
using diffcore::Tape;
using diffcore::Var;

InputNorm InputNorm::ForMaze(const mazeworld::MazeSpec& maze) {
  return {maze.extent_x() / 2.0, maze.extent_y() / 2.0,
          2.0 / std::max(maze.extent_x(), maze.extent_y())};
}

Matrix InputNorm::Apply(const Matrix& points) const {
  if (points.cols() != 2) throw InvalidArgument("points must be batch x 2");
  Matrix out(points.rows(), 2);
  out.col(0) = (points.col(0).array() - shift_x) * scale;
  out.col(1) = (points.col(1).array() - shift_y) * scale;
  return out;
}

MlpSpec ValueSpec(const std::vector<int>& hidden_dims, Activation activation) {
  MlpSpec spec;
  spec.input_dim = 4;
  spec.hidden_dims = hidden_dims;
  spec.output_dim = 1;
  spec.activation = activation;
  return spec;
}

namespace {

void CheckField(const MlpSpec& spec, const InputNorm& norm, double value_scale) {
  if (spec.input_dim != 4 || spec.output_dim != 1) {
    throw InvalidArgument("value network must map 4 inputs to 1 output");
  }
  if (!(norm.scale > 0.0) || !(value_scale > 0.0)) {
    throw InvalidArgument("value scales must be positive");
  }
}

}  // namespace

ValueField::ValueField(MlpSpec spec, InputNorm norm, double value_scale,
                       std::uint64_t seed)
    : spec_(std::move(spec)), norm_(norm), value_scale_(value_scale) {
  CheckField(spec_, norm_, value_scale_);
  online_ = diffcore::InitParams(spec_, seed);
  target_ = online_;
}

ValueField::ValueField(MlpSpec spec, InputNorm norm, double value_scale,
                       ParameterSet online, ParameterSet target)
    : spec_(std::move(spec)),
      norm_(norm),
      value_scale_(value_scale),
      online_(std::move(online)),
      target_(std::move(target)) {
  CheckField(spec_, norm_, value_scale_);
  const ParameterSet ref = diffcore::InitParams(spec_, 0);
  if (!online_.SameLayout(ref) || !target_.SameLayout(ref)) {
    throw InvalidArgument("value parameters do not match the network spec");
  }
}

Matrix ValueField::Input(const Matrix& states, const Matrix& goals) const {
  if (states.rows() != goals.rows()) {
    throw InvalidArgument("states and goals differ in batch size");
  }
  Matrix x(states.rows(), 4);
  x << norm_.Apply(states), norm_.Apply(goals);
  return x;
}

Vector ValueField::Value(const Matrix& states, const Matrix& goals) const {
  return value_scale_ *
         diffcore::Forward(online_, spec_, Input(states, goals)).col(0);
}

Vector ValueField::TargetValue(const Matrix& states,
                               const Matrix& goals) const {
  return value_scale_ *
         diffcore::Forward(target_, spec_, Input(states, goals)).col(0);
}

Matrix ValueField::GradState(const Matrix& states, const Matrix& goals) const {
  Matrix g = diffcore::InputGradient(online_, spec_, Input(states, goals));
  return (value_scale_ * norm_.scale) * g.leftCols(2);
}

ValueGraph BuildValueGraph(Tape& tape, const ValueField& field,
                           const Matrix& states, const Matrix& goals,
                           bool with_grad_s) {
  ValueGraph g;
  g.vars = diffcore::BindParams(tape, field.online(), field.spec(), true);
  diffcore::MlpTrace trace = diffcore::MlpForward(
      g.vars, field.spec(), tape.Constant(field.Input(states, goals)));
  g.value = Scale(trace.out, field.value_scale());
  if (with_grad_s) {
    Var dx = diffcore::MlpInputGradient(g.vars, field.spec(), trace);
    g.grad_s = Scale(SliceCols(dx, 0, 2),
                     field.value_scale() * field.norm().scale);
  }
  return g;
}

ValueQuery OnlineValue(const ValueField& field) {
  return [&field](const Matrix& s, const Matrix& g) { return field.Value(s, g); };
}

GradQuery OnlineGrad(const ValueField& field) {
  return [&field](const Matrix& s, const Matrix& g) {
    return field.GradState(s, g);
  };
}

ParameterSet ValueFieldToParams(const ValueField& field,
                                const std::string& prefix) {
  ParameterSet out;
  out.Merge(field.online(), prefix + "online/");
  out.Merge(field.target(), prefix + "target/");
  const InputNorm& n = field.norm();
  Matrix meta(1, 5);
  meta << n.shift_x, n.shift_y, n.scale, field.value_scale(),
      static_cast<double>(field.spec().activation);
  out.Add(prefix + "meta/norm", {5},
          meta);
  return out;
}

ValueField ValueFieldFromParams(const ParameterSet& params,
                                const std::string& prefix) {
  const std::string meta_name =
      prefix + "meta/norm";
  if (!params.Contains(meta_name)) {
    throw CorruptArtifact("checkpoint lacks " + meta_name);
  }
  const Matrix& meta = params.values(meta_name);
  if (meta.size() != 5) throw CorruptArtifact("bad value meta entry");
  const int code = static_cast<int>(meta(0, 4));
  if (code < 0 || code > 2 || code != meta(0, 4)) {
    throw CorruptArtifact("bad activation code in checkpoint");
  }
  try {
    ParameterSet online = params.WithPrefixStripped(prefix + "online/");
    ParameterSet target = params.WithPrefixStripped(prefix + "target/");
    MlpSpec spec = diffcore::InferSpec(online, static_cast<Activation>(code));
    return ValueField(spec, {meta(0, 0), meta(0, 1), meta(0, 2)}, meta(0, 3),
                      std::move(online), std::move(target));
  } catch (const InvalidArgument& e) {
    throw CorruptArtifact(std::string("value network: ") + e.what());
  }
}

}  // namespace eikgcrl::valuelearn
