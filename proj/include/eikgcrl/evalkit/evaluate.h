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

#ifndef EIKGCRL_EVALKIT_EVALUATE_H_
#define EIKGCRL_EVALKIT_EVALUATE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "eikgcrl/mazeworld/dynamics.h"
#include "eikgcrl/mazeworld/maze.h"
#include "eikgcrl/policyextract/actor.h"
#include "eikgcrl/rng.h"

namespace eikgcrl::evalkit {

using Eigen::MatrixXd;

// Actions (batch x 2) for rows of states and goals. `rngs` holds one stream
// per row; deterministic policies ignore it.
using Policy = std::function<MatrixXd(const MatrixXd& states,
                                      const MatrixXd& goals,
                                      std::span<Rng> rngs)>;

Policy ActorPolicy(const policyextract::Actor& actor, bool deterministic);
// Uniform on the disc of radius max_action.
Policy RandomPolicy(double max_action);

struct EvalConfig {
  int n_goals = 5;
  int episodes_per_goal = 50;
  int max_steps = 0;  // 0: DefaultMaxSteps(maze)
  std::uint64_t seed = 0;
  // Worker threads over goals; 0 reads EIKGCRL_THREADS, else hardware.
  int threads = 0;
};

// 200 / 400 / 600 for the built-in medium / large / giant mazes; otherwise
// three times the diameter walked at full speed, at least 50.
int DefaultMaxSteps(const mazeworld::MazeSpec& maze,
                    const mazeworld::EnvParams& env);

struct GoalResult {
  mazeworld::Cell goal_cell;
  mazeworld::State goal;
  int episodes = 0;
  int successes = 0;
  double success_rate = 0.0;  // percent
  double mean_steps_to_success = 0.0;  // over successful episodes
};

struct EvalReport {
  std::string maze;
  std::uint64_t seed = 0;
  int episodes_per_goal = 0;
  int max_steps = 0;
  std::vector<GoalResult> goals;
  double mean_success = 0.0;  // percent, mean over goals
  double std_success = 0.0;   // population std over goals
};

// Goals are distinct free cell centers; each episode starts at a uniformly
// chosen other free cell (center jittered by up to a quarter cell) and
// succeeds on entering the goal radius within max_steps. Every episode has
// its own RNG stream, so the report depends only on (policy, maze, config).
EvalReport Evaluate(const Policy& policy, const mazeworld::MazeSpec& maze,
                    const EvalConfig& config);

// Mean and population std of per-seed means.
struct SeedSummary {
  double mean = 0.0;
  double std = 0.0;
};
SeedSummary SummarizeSeeds(std::span<const EvalReport> reports);

nlohmann::json ReportToJson(const EvalReport& report);

// EIKGCRL_THREADS if set and positive, else hardware concurrency (>= 1).
int WorkerCount();

}  // namespace eikgcrl::evalkit

#endif  // EIKGCRL_EVALKIT_EVALUATE_H_
