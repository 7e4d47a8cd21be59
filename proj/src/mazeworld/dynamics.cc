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

#include "eikgcrl/mazeworld/dynamics.h"

#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::mazeworld {

// Actions produced by ClipAction may exceed the limit by an ulp or two.
constexpr double kActionSlack = 1e-12;

EnvParams DefaultEnvParams(const MazeSpec& maze) {
  return EnvParams{1.0, 0.25 * maze.cell_size(), 0.5 * maze.cell_size()};
}

Action ClipAction(Action a, double max_action) {
  const double n = std::hypot(a.x, a.y);
  if (n <= max_action) return a;
  const double k = max_action / n;
  return {a.x * k, a.y * k};
}

State Step(const MazeSpec& maze, const EnvParams& env, State s, Action a) {
  if (!maze.IsFreeState(s)) throw InvalidArgument("state is not free");
  if (!std::isfinite(a.x) || !std::isfinite(a.y) ||
      std::hypot(a.x, a.y) > env.max_action * (1.0 + kActionSlack)) {
    throw InvalidArgument("action exceeds max_action");
  }
  State next = s;
  const double nx = s.x + a.x * env.dt;
  if (maze.IsFreeState({nx, s.y})) next.x = nx;
  const double ny = s.y + a.y * env.dt;
  if (maze.IsFreeState({next.x, ny})) next.y = ny;
  return next;
}

double Distance(State a, State b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool ReachedGoal(State s, State g, double radius) {
  return Distance(s, g) <= radius;
}

double Reward(State s, State g, double radius) {
  return ReachedGoal(s, g, radius) ? 0.0 : -1.0;
}

}  // namespace eikgcrl::mazeworld
