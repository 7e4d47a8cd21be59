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

#ifndef EIKGCRL_DIFFCORE_DUAL_H_
#define EIKGCRL_DIFFCORE_DUAL_H_

#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/diffcore/parameter_set.h"

namespace eikgcrl::diffcore {

// Primal values paired with a tangent of identical shape (forward mode).
class Dual {
 public:
  Dual(Matrix primal, Matrix tangent);

  const Matrix& primal() const { return primal_; }
  const Matrix& tangent() const { return tangent_; }

 private:
  Matrix primal_;
  Matrix tangent_;
};

// Pushes (x, dx) through the network: returns (f(x), J_f(x) dx) per row.
Dual ForwardDual(const ParameterSet& params, const MlpSpec& spec,
                 const Dual& x);

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_DUAL_H_
