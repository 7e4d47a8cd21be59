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

#include "eikgcrl/mazeworld/goal_sampler.h"

#include <algorithm>
#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::mazeworld {

void ValidateGoalMix(const GoalMix& mix) {
  if (mix.p_current < 0 || mix.p_future < 0 || mix.p_random < 0 ||
      std::abs(mix.p_current + mix.p_future + mix.p_random - 1.0) > 1e-9) {
    throw InvalidArgument("goal mix must be non-negative and sum to 1");
  }
}

std::vector<SampledGoal> SampleGoals(const Dataset& data,
                                     std::span<const std::size_t> indices,
                                     const GoalMix& mix, double geometric_p,
                                     Rng& rng) {
  ValidateGoalMix(mix);
  if (!(geometric_p > 0.0 && geometric_p <= 1.0)) {
    throw InvalidArgument("geometric_p must be in (0, 1]");
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::geometric_distribution<int> geom(geometric_p);
  std::uniform_int_distribution<std::size_t> any(0, data.size() - 1);
  std::vector<SampledGoal> goals;
  goals.reserve(indices.size());
  for (std::size_t i : indices) {
    const Transition& tr = data.transitions()[i];
    const double r = u(rng);
    SampledGoal g;
    if (r < mix.p_current) {
      g = {tr.state, GoalSource::kCurrent, tr.traj_id, tr.step};
    } else if (r < mix.p_current + mix.p_future) {
      const int offset = 1 + geom(rng);
      const int step = std::min(tr.step + offset, data.Length(tr.traj_id));
      g = {data.StateAt(tr.traj_id, step), GoalSource::kFuture, tr.traj_id,
           step};
    } else {
      const Transition& other = data.transitions()[any(rng)];
      g = {other.state, GoalSource::kRandom, other.traj_id, other.step};
    }
    goals.push_back(g);
  }
  return goals;
}

Batch SampleBatch(const Dataset& data, int batch_size, const GoalMix& mix,
                  double geometric_p, int subgoal_steps, Rng& rng) {
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
  if (subgoal_steps < 1) throw InvalidArgument("subgoal steps must be >= 1");
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  Batch b;
  b.index.resize(batch_size);
  for (auto& i : b.index) i = pick(rng);
  const std::vector<SampledGoal> goals =
      SampleGoals(data, b.index, mix, geometric_p, rng);
  b.states.resize(batch_size, 2);
  b.actions.resize(batch_size, 2);
  b.next_states.resize(batch_size, 2);
  b.subgoals.resize(batch_size, 2);
  b.goals.resize(batch_size, 2);
  for (int r = 0; r < batch_size; ++r) {
    const Transition& tr = data.transitions()[b.index[r]];
    const int sub_step =
        std::min(tr.step + subgoal_steps, data.Length(tr.traj_id));
    const State sub = data.StateAt(tr.traj_id, sub_step);
    b.states.row(r) << tr.state.x, tr.state.y;
    b.actions.row(r) << tr.action.x, tr.action.y;
    b.next_states.row(r) << tr.next_state.x, tr.next_state.y;
    b.subgoals.row(r) << sub.x, sub.y;
    b.goals.row(r) << goals[r].goal.x, goals[r].goal.y;
  }
  return b;
}

Eigen::MatrixXd StatesToMatrix(std::span<const State> states) {
  Eigen::MatrixXd m(states.size(), 2);
  for (std::size_t i = 0; i < states.size(); ++i) {
    m(i, 0) = states[i].x;
    m(i, 1) = states[i].y;
  }
  return m;
}

}  // namespace eikgcrl::mazeworld
