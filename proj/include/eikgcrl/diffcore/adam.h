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

#ifndef EIKGCRL_DIFFCORE_ADAM_H_
#define EIKGCRL_DIFFCORE_ADAM_H_

#include <cstdint>

#include "eikgcrl/diffcore/parameter_set.h"

namespace eikgcrl::diffcore {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moment estimates plus the number of completed steps.
struct AdamState {
  ParameterSet m;
  ParameterSet v;
  std::int64_t step = 0;

  static AdamState For(const ParameterSet& params);
};

// One bias-corrected Adam update of `params` in place. Throws NumericalError
// (naming the offending entry) if any gradient is non-finite, leaving
// `params` and `state` untouched.
void AdamStep(ParameterSet& params, const ParameterSet& grads,
              AdamState& state, double lr, const AdamConfig& config = {});

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_ADAM_H_
