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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dataset.h"
#include "eikgcrl/mazeworld/dynamics.h"
#include "eikgcrl/mazeworld/goal_sampler.h"
#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::mazeworld {
namespace {

namespace fs = std::filesystem;

// Exhaustive oracle: every wall cell, no early exit.
double BruteForceObstacleDistance(const MazeSpec& maze, State s) {
  double best = std::numeric_limits<double>::infinity();
  const double h = maze.cell_size();
  for (int y = 0; y < maze.height(); ++y) {
    for (int x = 0; x < maze.width(); ++x) {
      if (!maze.IsWall({x, y})) continue;
      const double dx = std::max({x * h - s.x, 0.0, s.x - (x + 1) * h});
      const double dy = std::max({y * h - s.y, 0.0, s.y - (y + 1) * h});
      best = std::min(best, std::sqrt(dx * dx + dy * dy));
    }
  }
  return best;
}

State RandomFreeState(const MazeSpec& maze, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, maze.extent_x());
  std::uniform_real_distribution<double> uy(0.0, maze.extent_y());
  while (true) {
    State s{ux(rng), uy(rng)};
    if (maze.IsFreeState(s)) return s;
  }
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("eikgcrl_mazeworld_" + name);
  fs::remove_all(p);
  return p;
}

TEST(MazeTest, BuiltinsAreValidAndConnected) {
  const std::map<std::string, int> sizes = {
      {"medium", 7}, {"large", 11}, {"giant", 15}};
  for (const auto& [name, n] : sizes) {
    MazeSpec m = BuiltinMaze(name);
    EXPECT_EQ(m.width(), n);
    EXPECT_EQ(m.height(), n);
    EXPECT_TRUE(m.IsConnected()) << name;
    EXPECT_EQ(m.cell_size(), 4.0);
  }
  EXPECT_LT(BuiltinMaze("medium").Diameter(), BuiltinMaze("large").Diameter());
  EXPECT_LT(BuiltinMaze("large").Diameter(), BuiltinMaze("giant").Diameter());
}

TEST(MazeTest, RejectsInvalidGrids) {
  EXPECT_THROW(ParseMaze("open", "###\n#..\n###\n", 1.0), InvalidArgument);
  EXPECT_THROW(ParseMaze("ragged", "####\n#..#\n###\n", 1.0), InvalidArgument);
  EXPECT_THROW(ParseMaze("single", "###\n#.#\n###\n", 1.0), InvalidArgument);
  EXPECT_THROW(ParseMaze("chars", "####\n#.x#\n####\n", 1.0), InvalidArgument);
  EXPECT_THROW(BuiltinMaze("tiny"), InvalidArgument);
}

TEST(MazeTest, ParsesTextAndRoundTripsRows) {
  MazeSpec m = ParseMaze("t", "####\n#..#\n####\n", 2.0);
  EXPECT_EQ(m.free_cells().size(), 2u);
  EXPECT_EQ(m.Rows(), (std::vector<std::string>{"####", "#..#", "####"}));
  EXPECT_EQ(m.CellOf({2.5, 3.9}), (Cell{1, 1}));
  EXPECT_EQ(m.CenterOf({1, 1}), (State{3.0, 3.0}));
}

TEST(MazeTest, ShortestPathFollowsBfs) {
  MazeSpec m = BuiltinMaze("medium");
  const Cell a = m.free_cells().front();
  const Cell b = m.free_cells().back();
  const auto path = m.ShortestPath(a, b);
  ASSERT_FALSE(path.empty());
  EXPECT_EQ(static_cast<int>(path.size()) - 1, m.BfsDistances(a)[m.Index(b)]);
  for (std::size_t i = 1; i < path.size(); ++i) {
    EXPECT_EQ(std::abs(path[i].x - path[i - 1].x) +
                  std::abs(path[i].y - path[i - 1].y),
              1);
    EXPECT_TRUE(m.IsFree(path[i]));
  }
}

TEST(DynamicsTest, ZeroActionKeepsState) {
  MazeSpec m = BuiltinMaze("medium");
  State s{6.0, 6.0};
  EXPECT_EQ(Step(m, DefaultEnvParams(m), s, {0.0, 0.0}), s);
}

TEST(DynamicsTest, FreeSpaceMoveScalesWithDt) {
  MazeSpec m = BuiltinMaze("medium");
  EnvParams env = DefaultEnvParams(m);
  env.dt = 0.1;
  State s{6.0, 6.0};
  State n = Step(m, env, s, {1.0, 0.0});
  EXPECT_EQ(n.x, s.x + 0.1);
  EXPECT_EQ(n.y, s.y);
}

TEST(DynamicsTest, HeadOnWallCancelsBlockedAxisOnly) {
  // medium row 1 is "#...#.#": cell (4, 1) is a wall starting at x = 16.
  MazeSpec m = BuiltinMaze("medium");
  EnvParams env = DefaultEnvParams(m);
  State s{15.5, 6.0};
  State n = Step(m, env, s, {0.8, 0.6});
  EXPECT_EQ(n.x, s.x);
  EXPECT_EQ(n.y, s.y + 0.6);
  // Straight into the wall: nothing moves.
  EXPECT_EQ(Step(m, env, s, {1.0, 0.0}), s);
}

TEST(DynamicsTest, RejectsOversizedActionAndWallState) {
  MazeSpec m = BuiltinMaze("medium");
  EnvParams env = DefaultEnvParams(m);
  EXPECT_THROW(Step(m, env, {6.0, 6.0}, {1.0, 0.5}), InvalidArgument);
  EXPECT_THROW(Step(m, env, {1.0, 1.0}, {0.0, 0.0}), InvalidArgument);
}

TEST(DynamicsTest, EnvConstantsFollowCellSize) {
  EnvParams env = DefaultEnvParams(BuiltinMaze("giant", 8.0));
  EXPECT_EQ(env.dt, 1.0);
  EXPECT_EQ(env.max_action, 2.0);
  EXPECT_EQ(env.goal_radius, 4.0);
}

TEST(RewardTest, GoalRadiusInclusive) {
  const double radius = 2.0;
  EXPECT_EQ(Reward({5, 5}, {5, 5}, radius), 0.0);
  EXPECT_EQ(Reward({5, 5}, {5 + 10 * radius, 5}, radius), -1.0);
  EXPECT_EQ(Reward({5, 5}, {5, 5 + radius}, radius), 0.0);
  EXPECT_EQ(Reward({5, 5}, {5, 5 + radius * (1 + 1e-12)}, radius), -1.0);
}

TEST(ObstacleDistanceTest, TouchingWallFaceIsZero) {
  MazeSpec m = BuiltinMaze("medium");
  EXPECT_EQ(m.NearestObstacleDistance({4.0, 6.0}), 0.0);
  EXPECT_EQ(m.NearestObstacleDistance({16.0, 6.0}), 0.0);
}

TEST(ObstacleDistanceTest, CenteredInFreeBlocks) {
  // 3 x 3 free unit cells: the brute-force oracle gives 1.5 at the center.
  MazeSpec block3 = ParseMaze("b3", "#####\n#...#\n#...#\n#...#\n#####\n", 1.0);
  EXPECT_DOUBLE_EQ(BruteForceObstacleDistance(block3, {2.5, 2.5}), 1.5);
  EXPECT_DOUBLE_EQ(block3.NearestObstacleDistance({2.5, 2.5}), 1.5);
  // 2 x 2 free unit cells (3 x 3 grid vertices): 1.0 at the shared corner.
  MazeSpec block2 = ParseMaze("b2", "####\n#..#\n#..#\n####\n", 1.0);
  EXPECT_DOUBLE_EQ(BruteForceObstacleDistance(block2, {2.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(block2.NearestObstacleDistance({2.0, 2.0}), 1.0);
}

TEST(ObstacleDistanceTest, MatchesBruteForceAndIsOneLipschitz) {
  Rng rng(17);
  for (const std::string& name : BuiltinMazeNames()) {
    MazeSpec m = BuiltinMaze(name);
    for (int i = 0; i < 2000; ++i) {
      State a = RandomFreeState(m, rng);
      State b = RandomFreeState(m, rng);
      const double da = m.NearestObstacleDistance(a);
      const double db = m.NearestObstacleDistance(b);
      ASSERT_NEAR(da, BruteForceObstacleDistance(m, a), 1e-12);
      EXPECT_GT(da, 0.0);
      EXPECT_LE(std::abs(da - db), Distance(a, b) + 1e-12);
    }
  }
}

TEST(NavigateDatasetTest, ReplayableAndDeterministic) {
  MazeSpec m = BuiltinMaze("medium");
  GeneratorParams p;
  p.n_traj = 100;
  p.seed = 3;
  Dataset d = GenerateNavigateDataset(m, p);
  EXPECT_EQ(d.num_trajectories(), 100);
  const EnvParams env = DefaultEnvParams(m);
  for (const Transition& t : d.transitions()) {
    EXPECT_LE(std::hypot(t.action.x, t.action.y), env.max_action + 1e-12);
    const State replay = Step(m, env, t.state, t.action);
    ASSERT_EQ(replay, t.next_state);
  }
  const fs::path a = TempDir("nav_a");
  const fs::path b = TempDir("nav_b");
  WriteDataset(d, a);
  WriteDataset(GenerateNavigateDataset(m, p), b);
  EXPECT_EQ(ReadFile(a / kDatasetCsvName), ReadFile(b / kDatasetCsvName));
  EXPECT_EQ(ReadFile(a / kDatasetManifestName),
            ReadFile(b / kDatasetManifestName));
}

TEST(NavigateDatasetTest, TrajectoriesAreLong) {
  MazeSpec m = BuiltinMaze("large");
  GeneratorParams p;
  p.n_traj = 200;
  p.seed = 1;
  Dataset d = GenerateNavigateDataset(m, p);
  double total = 0.0;
  for (int tr = 0; tr < d.num_trajectories(); ++tr) {
    const Cell a = m.CellOf(d.StateAt(tr, 0));
    const Cell b = m.CellOf(d.StateAt(tr, d.Length(tr)));
    total += m.BfsDistances(a)[m.Index(b)];
  }
  EXPECT_GT(total / d.num_trajectories(), m.Diameter() / 2.0);
}

TEST(StitchDatasetTest, SegmentsCappedAndCoverMaze) {
  for (const std::string& name : BuiltinMazeNames()) {
    MazeSpec m = BuiltinMaze(name);
    GeneratorParams p;
    p.n_traj = 500;
    p.seed = 11;
    p.max_segment_cells = 4;
    Dataset d = GenerateStitchDataset(m, p);
    const EnvParams env = DefaultEnvParams(m);
    for (int tr = 0; tr < d.num_trajectories(); ++tr) {
      const Cell a = m.CellOf(d.StateAt(tr, 0));
      const Cell b = m.CellOf(d.StateAt(tr, d.Length(tr)));
      ASSERT_LE(m.BfsDistances(a)[m.Index(b)], 4) << name << " traj " << tr;
    }
    for (const Transition& t : d.transitions()) {
      ASSERT_EQ(Step(m, env, t.state, t.action), t.next_state);
    }
    EXPECT_GE(CellCoverage(d), 0.9) << name;
  }
}

TEST(DatasetTest, CsvRoundTripIsExact) {
  MazeSpec m = BuiltinMaze("medium");
  GeneratorParams p;
  p.type = DatasetType::kStitch;
  p.n_traj = 30;
  p.seed = 5;
  Dataset d = GenerateDataset(m, p);
  const fs::path dir = TempDir("roundtrip");
  WriteDataset(d, dir);
  Dataset back = ReadDataset(dir);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Transition& x = d.transitions()[i];
    const Transition& y = back.transitions()[i];
    ASSERT_EQ(x.state, y.state);
    ASSERT_EQ(x.action, y.action);
    ASSERT_EQ(x.next_state, y.next_state);
    ASSERT_EQ(x.traj_id, y.traj_id);
    ASSERT_EQ(x.step, y.step);
  }
  EXPECT_EQ(back.maze().Rows(), m.Rows());
  EXPECT_EQ(back.params().type, DatasetType::kStitch);
  EXPECT_EQ(back.params().seed, 5u);
}

TEST(DatasetTest, RejectsBrokenTrajectories) {
  MazeSpec m = BuiltinMaze("medium");
  std::vector<Transition> t = {{{6, 6}, {0, 0}, {6, 6}, 0, 0},
                               {{6, 6}, {0, 0}, {6, 6}, 0, 2}};
  EXPECT_THROW(Dataset(m, {}, t), InvalidArgument);
  std::vector<Transition> wall = {{{1, 1}, {0, 0}, {1, 1}, 0, 0}};
  EXPECT_THROW(Dataset(m, {}, wall), InvalidArgument);
  std::vector<Transition> gap = {{{6, 6}, {0, 0}, {6, 6}, 0, 0},
                                 {{7, 6}, {0, 0}, {7, 6}, 0, 1}};
  EXPECT_THROW(Dataset(m, {}, gap), InvalidArgument);
}

TEST(DatasetTest, CorruptFilesReported) {
  MazeSpec m = BuiltinMaze("medium");
  GeneratorParams p;
  p.n_traj = 3;
  const fs::path dir = TempDir("corrupt");
  WriteDataset(GenerateDataset(m, p), dir);
  {
    std::ofstream out(dir / kDatasetCsvName, std::ios::app);
    out << "0,1,abc\n";
  }
  EXPECT_THROW(ReadDataset(dir), CorruptArtifact);
  EXPECT_THROW(ReadDataset(TempDir("missing")), InvalidArgument);
}

class GoalSamplerTest : public ::testing::Test {
 protected:
  GoalSamplerTest() : data_(MakeData()) {}
  static Dataset MakeData() {
    GeneratorParams p;
    p.n_traj = 60;
    p.seed = 9;
    return GenerateNavigateDataset(BuiltinMaze("medium"), p);
  }
  std::vector<std::size_t> Indices(int n, Rng& rng) const {
    std::uniform_int_distribution<std::size_t> u(0, data_.size() - 1);
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = u(rng);
    return idx;
  }
  Dataset data_;
};

TEST_F(GoalSamplerTest, CurrentGoalIsTheStateItself) {
  Rng rng(1);
  const auto idx = Indices(500, rng);
  const auto goals = SampleGoals(data_, idx, {1, 0, 0}, 0.01, rng);
  const double radius = DefaultEnvParams(data_.maze()).goal_radius;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    EXPECT_EQ(goals[i].goal, data_.transitions()[idx[i]].state);
    EXPECT_EQ(Reward(data_.transitions()[idx[i]].state, goals[i].goal, radius),
              0.0);
  }
}

TEST_F(GoalSamplerTest, FutureGoalSharesTrajectoryAndIsLater) {
  Rng rng(2);
  const auto idx = Indices(2000, rng);
  const auto goals = SampleGoals(data_, idx, {0, 1, 0}, 0.05, rng);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Transition& t = data_.transitions()[idx[i]];
    EXPECT_EQ(goals[i].traj_id, t.traj_id);
    EXPECT_GT(goals[i].step, t.step);
    EXPECT_LE(goals[i].step, data_.Length(t.traj_id));
    EXPECT_EQ(goals[i].goal, data_.StateAt(t.traj_id, goals[i].step));
  }
}

TEST_F(GoalSamplerTest, RandomGoalsFollowStateMarginal) {
  Rng rng(3);
  const MazeSpec& m = data_.maze();
  std::map<int, double> expected;
  for (const Transition& t : data_.transitions()) {
    expected[m.Index(m.CellOf(t.state))] += 1.0;
  }
  const int n = 50000;
  const auto idx = Indices(n, rng);
  const auto goals = SampleGoals(data_, idx, {0, 0, 1}, 0.01, rng);
  std::map<int, double> observed;
  for (const auto& g : goals) observed[m.Index(m.CellOf(g.goal))] += 1.0;
  double chi2 = 0.0;
  for (auto& [cell, count] : expected) {
    const double e = count / data_.size() * n;
    const double o = observed[cell];
    chi2 += (o - e) * (o - e) / e;
  }
  const double dof = static_cast<double>(expected.size() - 1);
  const double p = boost::math::cdf(
      boost::math::complement(boost::math::chi_squared(dof), chi2));
  EXPECT_GT(p, 0.01) << "chi2=" << chi2 << " dof=" << dof;
}

TEST_F(GoalSamplerTest, MixValidationAndBatchShapes) {
  Rng rng(4);
  EXPECT_THROW(ValidateGoalMix({0.5, 0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(ValidateGoalMix({-0.1, 0.6, 0.5}), InvalidArgument);
  Batch b = SampleBatch(data_, 64, {}, 0.01, 10, rng);
  EXPECT_EQ(b.states.rows(), 64);
  EXPECT_EQ(b.goals.cols(), 2);
  for (int r = 0; r < 64; ++r) {
    const Transition& t = data_.transitions()[b.index[r]];
    const int k = std::min(t.step + 10, data_.Length(t.traj_id));
    const State sub = data_.StateAt(t.traj_id, k);
    EXPECT_EQ(b.subgoals(r, 0), sub.x);
    EXPECT_EQ(b.subgoals(r, 1), sub.y);
    EXPECT_EQ(b.next_states(r, 0), t.next_state.x);
  }
}

TEST_F(GoalSamplerTest, DeterministicForSeed) {
  Rng a(42), b(42);
  Batch x = SampleBatch(data_, 128, {}, 0.01, 10, a);
  Batch y = SampleBatch(data_, 128, {}, 0.01, 10, b);
  EXPECT_EQ(x.index, y.index);
  EXPECT_EQ(x.goals, y.goals);
}

}  // namespace
}  // namespace eikgcrl::mazeworld
