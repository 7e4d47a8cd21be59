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

#ifndef EIKGCRL_MAZEWORLD_DYNAMICS_H_
#define EIKGCRL_MAZEWORLD_DYNAMICS_H_

#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::mazeworld {

struct Action {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Action&, const Action&) = default;
};

// Point-mass environment constants derived from the maze scale.
struct EnvParams {
  double dt = 1.0;
  double max_action = 1.0;
  double goal_radius = 2.0;
};

// dt = 1, max action = cell_size / 4, goal radius = cell_size / 2.
EnvParams DefaultEnvParams(const MazeSpec& maze);

// Scales `a` down onto the disc of radius `max_action` if it lies outside.
Action ClipAction(Action a, double max_action);

// s' = s + a * dt, resolved per axis: x moves first and is cancelled if the
// new position is not free, then y likewise. Throws InvalidArgument if `s`
// is not a free state or |a| exceeds the limit.
State Step(const MazeSpec& maze, const EnvParams& env, State s, Action a);

// 0 within the goal radius (inclusive), -1 otherwise.
double Reward(State s, State g, double radius);
bool ReachedGoal(State s, State g, double radius);

double Distance(State a, State b);

}  // namespace eikgcrl::mazeworld

#endif  // EIKGCRL_MAZEWORLD_DYNAMICS_H_
