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

#include "eikgcrl/evalkit/evaluate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "eikgcrl/errors.h"

namespace eikgcrl::evalkit {

using mazeworld::Cell;
using mazeworld::MazeSpec;
using mazeworld::State;

namespace {

// Stream labels for DeriveSeed.
constexpr std::uint64_t kGoalStream = 1;
constexpr std::uint64_t kEpisodeStream = 2;

}  // namespace

Policy ActorPolicy(const policyextract::Actor& actor, bool deterministic) {
  return [actor, deterministic](const MatrixXd& s, const MatrixXd& g,
                                std::span<Rng> rngs) {
    if (deterministic) {
      Rng unused(0);
      return policyextract::Act(actor, s, g, true, unused);
    }
    MatrixXd out(s.rows(), 2);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      out.row(i) = policyextract::Act(actor, MatrixXd(s.row(i)),
                                      MatrixXd(g.row(i)), false, rngs[i]);
    }
    return out;
  };
}

Policy RandomPolicy(double max_action) {
  return [max_action](const MatrixXd& s, const MatrixXd&, std::span<Rng> rngs) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    MatrixXd out(s.rows(), 2);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      const double r = max_action * std::sqrt(u(rngs[i]));
      const double th = 2 * std::numbers::pi * u(rngs[i]);
      out(i, 0) = r * std::cos(th);
      out(i, 1) = r * std::sin(th);
    }
    return out;
  };
}

int DefaultMaxSteps(const MazeSpec& maze, const mazeworld::EnvParams& env) {
  if (maze.name() == "medium") return 200;
  if (maze.name() == "large") return 400;
  if (maze.name() == "giant") return 600;
  const double walk = maze.Diameter() * maze.cell_size() / env.max_action;
  return std::max(50, static_cast<int>(std::ceil(3.0 * walk)));
}

int WorkerCount() {
  if (const char* env = std::getenv("EIKGCRL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

GoalResult RunGoal(const Policy& policy, const MazeSpec& maze,
                   const mazeworld::EnvParams& env, Cell goal_cell,
                   int goal_index, const EvalConfig& config, int max_steps) {
  GoalResult res;
  res.goal_cell = goal_cell;
  res.goal = maze.CenterOf(goal_cell);
  const int n = config.episodes_per_goal;
  res.episodes = n;
  std::vector<Rng> rngs;
  MatrixXd states(n, 2);
  const auto& cells = maze.free_cells();
  const double jitter = 0.25 * maze.cell_size();
  for (int e = 0; e < n; ++e) {
    rngs.emplace_back(DeriveSeed(config.seed, {kEpisodeStream,
                                               static_cast<std::uint64_t>(goal_index),
                                               static_cast<std::uint64_t>(e)}));
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 2);
    std::size_t k = pick(rngs.back());
    if (cells[k] == goal_cell) k = cells.size() - 1;
    std::uniform_real_distribution<double> u(-jitter, jitter);
    const State c = maze.CenterOf(cells[k]);
    states(e, 0) = c.x + u(rngs.back());
    states(e, 1) = c.y + u(rngs.back());
  }
  std::vector<int> active;
  long long steps_sum = 0;
  for (int e = 0; e < n; ++e) {
    if (mazeworld::ReachedGoal({states(e, 0), states(e, 1)}, res.goal,
                               env.goal_radius)) {
      ++res.successes;
    } else {
      active.push_back(e);
    }
  }
  for (int t = 1; t <= max_steps && !active.empty(); ++t) {
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    MatrixXd s(m, 2), g(m, 2);
    std::vector<Rng> local;
    local.reserve(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      s.row(i) = states.row(active[i]);
      g(i, 0) = res.goal.x;
      g(i, 1) = res.goal.y;
      local.push_back(rngs[active[i]]);
    }
    const MatrixXd a = policy(s, g, local);
    if (a.rows() != m || a.cols() != 2) {
      throw InvalidArgument("policy returned wrong action shape");
    }
    std::vector<int> still;
    for (Eigen::Index i = 0; i < m; ++i) {
      const int e = active[i];
      rngs[e] = local[i];
      const mazeworld::Action act =
          mazeworld::ClipAction({a(i, 0), a(i, 1)}, env.max_action);
      if (!std::isfinite(act.x) || !std::isfinite(act.y)) {
        throw NumericalError("policy produced a non-finite action");
      }
      const State next =
          mazeworld::Step(maze, env, {states(e, 0), states(e, 1)}, act);
      states(e, 0) = next.x;
      states(e, 1) = next.y;
      if (mazeworld::ReachedGoal(next, res.goal, env.goal_radius)) {
        ++res.successes;
        steps_sum += t;
      } else {
        still.push_back(e);
      }
    }
    active.swap(still);
  }
  res.success_rate = 100.0 * res.successes / n;
  res.mean_steps_to_success =
      res.successes ? static_cast<double>(steps_sum) / res.successes : 0.0;
  return res;
}

}  // namespace

EvalReport Evaluate(const Policy& policy, const MazeSpec& maze,
                    const EvalConfig& config) {
  if (config.n_goals < 1 || config.episodes_per_goal < 1) {
    throw InvalidArgument("need at least one goal and one episode");
  }
  const auto& cells = maze.free_cells();
  if (static_cast<std::size_t>(config.n_goals) > cells.size()) {
    throw InvalidArgument("more goals requested than free cells");
  }
  const mazeworld::EnvParams env = mazeworld::DefaultEnvParams(maze);
  const int max_steps =
      config.max_steps > 0 ? config.max_steps : DefaultMaxSteps(maze, env);

  // Partial Fisher-Yates over free cells for distinct goals.
  Rng goal_rng(DeriveSeed(config.seed, {kGoalStream}));
  std::vector<Cell> pool = cells;
  std::vector<Cell> goals;
  for (int i = 0; i < config.n_goals; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(goal_rng)]);
    goals.push_back(pool[i]);
  }

  EvalReport rep;
  rep.maze = maze.name();
  rep.seed = config.seed;
  rep.episodes_per_goal = config.episodes_per_goal;
  rep.max_steps = max_steps;
  rep.goals.resize(goals.size());
  const int workers = std::min<int>(
      config.threads > 0 ? config.threads : WorkerCount(), goals.size());
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (int i = next++; i < static_cast<int>(goals.size()); i = next++) {
      try {
        rep.goals[i] = RunGoal(policy, maze, env, goals[i], i, config, max_steps);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool_threads;
    for (int w = 0; w < workers; ++w) pool_threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  double sum = 0.0, sq = 0.0;
  for (const GoalResult& g : rep.goals) sum += g.success_rate;
  rep.mean_success = sum / rep.goals.size();
  for (const GoalResult& g : rep.goals) {
    sq += (g.success_rate - rep.mean_success) * (g.success_rate - rep.mean_success);
  }
  rep.std_success = std::sqrt(sq / rep.goals.size());
  return rep;
}

SeedSummary SummarizeSeeds(std::span<const EvalReport> reports) {
  SeedSummary s;
  if (reports.empty()) return s;
  for (const EvalReport& r : reports) s.mean += r.mean_success;
  s.mean /= reports.size();
  for (const EvalReport& r : reports) {
    s.std += (r.mean_success - s.mean) * (r.mean_success - s.mean);
  }
  s.std = std::sqrt(s.std / reports.size());
  return s;
}

nlohmann::json ReportToJson(const EvalReport& r) {
  nlohmann::json goals = nlohmann::json::array();
  for (const GoalResult& g : r.goals) {
    goals.push_back({{"goal_cell", {g.goal_cell.x, g.goal_cell.y}},
                     {"goal", {g.goal.x, g.goal.y}},
                     {"episodes", g.episodes},
                     {"successes", g.successes},
                     {"success_rate", g.success_rate},
                     {"mean_steps_to_success", g.mean_steps_to_success}});
  }
  return {{"format", 1},
          {"maze", r.maze},
          {"seed", r.seed},
          {"episodes_per_goal", r.episodes_per_goal},
          {"max_steps", r.max_steps},
          {"n_goals", r.goals.size()},
          {"goals", goals},
          {"mean_success", r.mean_success},
          {"std_success", r.std_success}};
}

}  // namespace eikgcrl::evalkit
