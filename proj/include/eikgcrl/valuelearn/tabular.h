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

#ifndef EIKGCRL_VALUELEARN_TABULAR_H_
#define EIKGCRL_VALUELEARN_TABULAR_H_

#include <span>
#include <vector>

namespace eikgcrl::valuelearn {

struct TabularTransition {
  int state = 0;
  int next_state = 0;
  double reward = 0.0;
  bool done = false;
};

// iota-expectile of `samples`: the v solving
// sum_i |iota - [x_i < v]| (x_i - v) = 0. Throws on an empty sample.
double Expectile(std::span<const double> samples, double iota);

// Fixed point of the expectile TD update on a finite state space: for every
// state, V(s) = expectile over its outgoing transitions of
// r + gamma * (1 - done) * V(s'). States without transitions keep 0.
// Iterates until the sup-norm change is below `tol`.
std::vector<double> TabularExpectileValues(
    int num_states, std::span<const TabularTransition> transitions,
    double gamma, double iota, double tol = 1e-13, int max_iters = 1000000);

// Value of a deterministic n-step path with reward -1 per step:
// -(1 - gamma^n) / (1 - gamma), or -n when gamma = 1.
double DiscountedPathValue(int n, double gamma);

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_TABULAR_H_
