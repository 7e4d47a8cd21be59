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

#ifndef EIKGCRL_MAZEWORLD_GOAL_SAMPLER_H_
#define EIKGCRL_MAZEWORLD_GOAL_SAMPLER_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eikgcrl/mazeworld/dataset.h"
#include "eikgcrl/rng.h"

namespace eikgcrl::mazeworld {

// Hindsight relabeling mixture: the state itself, a future state of the same
// trajectory at a geometric offset, or a uniformly random dataset state.
struct GoalMix {
  double p_current = 0.2;
  double p_future = 0.5;
  double p_random = 0.3;

  friend bool operator==(const GoalMix&, const GoalMix&) = default;
};

// Throws InvalidArgument unless the probabilities are >= 0 and sum to 1.
void ValidateGoalMix(const GoalMix& mix);

enum class GoalSource { kCurrent, kFuture, kRandom };

struct SampledGoal {
  State goal;
  GoalSource source = GoalSource::kCurrent;
  int traj_id = 0;
  int step = 0;
};

// One goal per transition index in `indices`. Future offsets are
// 1 + Geometric(geometric_p) steps, truncated at the trajectory end.
std::vector<SampledGoal> SampleGoals(const Dataset& data,
                                     std::span<const std::size_t> indices,
                                     const GoalMix& mix, double geometric_p,
                                     Rng& rng);

// Rows are samples; state-valued fields are batch x 2.
struct Batch {
  std::vector<std::size_t> index;
  Eigen::MatrixXd states;       // s_t
  Eigen::MatrixXd actions;      // a_t
  Eigen::MatrixXd next_states;  // s_{t+1}
  Eigen::MatrixXd subgoals;     // s_{t+k}, truncated at trajectory end
  Eigen::MatrixXd goals;        // relabeled goal
};

// Uniform transition indices with relabeled goals and k-step subgoals.
Batch SampleBatch(const Dataset& data, int batch_size, const GoalMix& mix,
                  double geometric_p, int subgoal_steps, Rng& rng);

Eigen::MatrixXd StatesToMatrix(std::span<const State> states);

}  // namespace eikgcrl::mazeworld

#endif  // EIKGCRL_MAZEWORLD_GOAL_SAMPLER_H_
