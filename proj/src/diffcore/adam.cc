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

#include "eikgcrl/diffcore/adam.h"

#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {

AdamState AdamState::For(const ParameterSet& params) {
  return AdamState{params.ZerosLike(), params.ZerosLike(), 0};
}

void AdamStep(ParameterSet& params, const ParameterSet& grads,
              AdamState& state, double lr, const AdamConfig& config) {
  if (!params.SameLayout(grads) || !params.SameLayout(state.m)) {
    throw InvalidArgument("adam: parameter, gradient and moment layouts differ");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!grads.values(i).allFinite()) {
      throw NumericalError("adam: non-finite gradient in '" +
                           grads.entry(i).name + "' at step " +
                           std::to_string(state.step + 1));
    }
  }
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& g = grads.values(i);
    Matrix& m = state.m.mutable_values(i);
    Matrix& v = state.v.mutable_values(i);
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g.cwiseProduct(g);
    params.mutable_values(i).array() -=
        lr * (m.array() / c1) /
        ((v.array() / c2).sqrt() + config.epsilon);
  }
}

}  // namespace eikgcrl::diffcore
