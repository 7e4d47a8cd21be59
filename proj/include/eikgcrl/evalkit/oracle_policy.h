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

#ifndef EIKGCRL_EVALKIT_ORACLE_POLICY_H_
#define EIKGCRL_EVALKIT_ORACLE_POLICY_H_

#include "eikgcrl/evalkit/evaluate.h"
#include "eikgcrl/oracle/distance_field.h"

namespace eikgcrl::evalkit {

// Descends the fast-marching travel time: inside the goal cell it heads for
// the goal, elsewhere for the center of the 4-neighbor cell with the least
// time. Two adjacent free cells form a rectangle, so these moves never touch
// a wall. Fields are computed per goal cell on first use (thread safe).
Policy OracleGreedyPolicy(const mazeworld::MazeSpec& maze, double max_action);

}  // namespace eikgcrl::evalkit

#endif  // EIKGCRL_EVALKIT_ORACLE_POLICY_H_
