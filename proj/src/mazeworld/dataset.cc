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

#include "eikgcrl/mazeworld/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eikgcrl/errors.h"
#include "eikgcrl/rng.h"

namespace eikgcrl::mazeworld {
namespace {

using nlohmann::json;

constexpr int kMaxAttempts = 1000;

struct Rollout {
  std::vector<Transition> transitions;
  bool reached = false;
};

// Uniform position inside `c`, kept a small margin away from the faces.
State RandomPointInCell(const MazeSpec& maze, Cell c, Rng& rng) {
  const double margin = 0.05 * maze.cell_size();
  std::uniform_real_distribution<double> u(margin, maze.cell_size() - margin);
  const double x = c.x * maze.cell_size() + u(rng);
  const double y = c.y * maze.cell_size() + u(rng);
  return {x, y};
}

// Noisy waypoint tracking along the BFS cell path to `goal`. Stops, without
// acting, once the state is in the goal cell within the goal radius of its
// center.
Rollout TrackPath(const MazeSpec& maze, const EnvParams& env, State start,
                  Cell goal, double noise_std, int max_steps, int traj_id,
                  Rng& rng) {
  Rollout out;
  const std::vector<Cell> path = maze.ShortestPath(maze.CellOf(start), goal);
  if (path.empty()) return out;
  const State goal_center = maze.CenterOf(goal);
  std::normal_distribution<double> noise(0.0, noise_std);
  std::size_t waypoint = path.size() > 1 ? 1 : 0;
  State s = start;
  for (int t = 0; t < max_steps; ++t) {
    if (maze.CellOf(s) == goal && ReachedGoal(s, goal_center, env.goal_radius)) {
      out.reached = true;
      return out;
    }
    while (waypoint + 1 < path.size() &&
           Distance(s, maze.CenterOf(path[waypoint])) <= env.max_action) {
      ++waypoint;
    }
    const State target = maze.CenterOf(path[waypoint]);
    const double dx = target.x - s.x;
    const double dy = target.y - s.y;
    const double n = std::hypot(dx, dy);
    Action a;
    if (n > 0.0) {
      const double k = std::min(env.max_action, n) / n;
      a = {dx * k, dy * k};
    }
    a.x += noise(rng);
    a.y += noise(rng);
    a = ClipAction(a, env.max_action);
    const State next = Step(maze, env, s, a);
    out.transitions.push_back({s, a, next, traj_id, t});
    s = next;
  }
  out.reached =
      maze.CellOf(s) == goal && ReachedGoal(s, goal_center, env.goal_radius);
  return out;
}

int StepBudget(const MazeSpec& maze, const EnvParams& env, int path_cells) {
  const double steps_per_cell = maze.cell_size() / env.max_action;
  return static_cast<int>(3.0 * (path_cells + 1) * steps_per_cell) + 20;
}

template <typename ChooseGoal, typename Accept>
Dataset Generate(const MazeSpec& maze, const GeneratorParams& params,
                 ChooseGoal choose_goal, Accept accept) {
  if (params.n_traj < 1) throw InvalidArgument("n_traj must be >= 1");
  if (!maze.IsConnected()) {
    throw InvalidArgument("maze '" + maze.name() + "' is not connected");
  }
  const EnvParams env = DefaultEnvParams(maze);
  const double noise_std = params.noise_frac * env.max_action;
  std::vector<Transition> all;
  for (int traj = 0; traj < params.n_traj; ++traj) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
      Rng rng(DeriveSeed(params.seed, {static_cast<std::uint64_t>(traj),
                                       static_cast<std::uint64_t>(attempt)}));
      const auto& cells = maze.free_cells();
      const Cell start_cell = cells[std::uniform_int_distribution<std::size_t>(
          0, cells.size() - 1)(rng)];
      const std::vector<int> dist = maze.BfsDistances(start_cell);
      std::vector<Cell> candidates;
      for (Cell c : cells) {
        if (choose_goal(dist[maze.Index(c)])) candidates.push_back(c);
      }
      if (candidates.empty()) continue;
      const Cell goal = candidates[std::uniform_int_distribution<std::size_t>(
          0, candidates.size() - 1)(rng)];
      const State start = RandomPointInCell(maze, start_cell, rng);
      Rollout r = TrackPath(maze, env, start, goal, noise_std,
                            StepBudget(maze, env, dist[maze.Index(goal)]),
                            traj, rng);
      if (!r.reached || r.transitions.empty()) continue;
      if (!accept(start_cell, maze.CellOf(r.transitions.back().next_state))) {
        continue;
      }
      all.insert(all.end(), r.transitions.begin(), r.transitions.end());
      done = true;
    }
    if (!done) {
      throw InvalidArgument("could not generate trajectory " +
                            std::to_string(traj) + " on maze " + maze.name());
    }
  }
  return Dataset(maze, params, std::move(all));
}

std::string Trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

double ParseDouble(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* b = field.data();
  const char* e = b + field.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw CorruptArtifact("bad number '" + field + "' on dataset line " +
                          std::to_string(line));
  }
  return v;
}

int ParseInt(const std::string& field, std::size_t line) {
  int v = 0;
  const char* b = field.data();
  const char* e = b + field.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw CorruptArtifact("bad integer '" + field + "' on dataset line " +
                          std::to_string(line));
  }
  return v;
}

}  // namespace

const char* DatasetTypeName(DatasetType t) {
  return t == DatasetType::kNavigate ? "navigate" : "stitch";
}

DatasetType ParseDatasetType(std::string_view name) {
  if (name == "navigate") return DatasetType::kNavigate;
  if (name == "stitch") return DatasetType::kStitch;
  throw InvalidArgument("unknown dataset type: " + std::string(name));
}

Dataset::Dataset(MazeSpec maze, GeneratorParams params,
                 std::vector<Transition> transitions)
    : maze_(std::move(maze)),
      params_(params),
      transitions_(std::move(transitions)) {
  int expected_traj = -1;
  int expected_step = 0;
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const Transition& tr = transitions_[i];
    if (tr.traj_id == expected_traj + 1 && tr.step == 0) {
      expected_traj = tr.traj_id;
      begin_.push_back(i);
    } else if (tr.traj_id != expected_traj || tr.step != expected_step) {
      throw InvalidArgument("dataset trajectories must be contiguous, numbered "
                            "from 0 and ordered by step (index " +
                            std::to_string(i) + ")");
    } else if (!(transitions_[i - 1].next_state == tr.state)) {
      throw InvalidArgument("trajectory " + std::to_string(tr.traj_id) +
                            " is not continuous at step " +
                            std::to_string(tr.step));
    }
    expected_step = tr.step + 1;
    if (!maze_.IsFreeState(tr.state) || !maze_.IsFreeState(tr.next_state)) {
      throw InvalidArgument("dataset state inside a wall at index " +
                            std::to_string(i));
    }
  }
}

int Dataset::Length(int traj) const {
  const std::size_t end = traj + 1 < num_trajectories()
                              ? begin_[traj + 1]
                              : transitions_.size();
  return static_cast<int>(end - begin_[traj]);
}

State Dataset::StateAt(int traj, int step) const {
  const int len = Length(traj);
  if (step < 0 || step > len) throw InvalidArgument("step out of range");
  if (step == len) return transitions_[begin_[traj] + len - 1].next_state;
  return transitions_[begin_[traj] + step].state;
}

Dataset GenerateNavigateDataset(const MazeSpec& maze, GeneratorParams params) {
  params.type = DatasetType::kNavigate;
  const int min_cells = (maze.Diameter() + 1) / 2;
  return Generate(
      maze, params, [min_cells](int d) { return d >= min_cells; },
      [](Cell, Cell) { return true; });
}

Dataset GenerateStitchDataset(const MazeSpec& maze, GeneratorParams params) {
  params.type = DatasetType::kStitch;
  const int cap = params.max_segment_cells;
  if (cap < 1) throw InvalidArgument("max_segment_cells must be >= 1");
  const int lo = std::max(1, (cap + 1) / 2);
  return Generate(
      maze, params, [lo, cap](int d) { return d >= lo && d <= cap; },
      [&maze, cap](Cell start, Cell end) {
        const int d = maze.BfsDistances(start)[maze.Index(end)];
        return d != kUnreachable && d <= cap;
      });
}

Dataset GenerateDataset(const MazeSpec& maze, const GeneratorParams& params) {
  return params.type == DatasetType::kNavigate
             ? GenerateNavigateDataset(maze, params)
             : GenerateStitchDataset(maze, params);
}

double CellCoverage(const Dataset& data) {
  const MazeSpec& maze = data.maze();
  std::set<int> visited;
  for (const Transition& tr : data.transitions()) {
    visited.insert(maze.Index(maze.CellOf(tr.state)));
    visited.insert(maze.Index(maze.CellOf(tr.next_state)));
  }
  return static_cast<double>(visited.size()) /
         static_cast<double>(maze.free_cells().size());
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteDataset(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / kDatasetCsvName, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write into " + dir.string());
    out << "traj_id,step,sx,sy,ax,ay,nsx,nsy\n";
    for (const Transition& t : data.transitions()) {
      out << t.traj_id << ',' << t.step << ',' << FormatDouble(t.state.x) << ','
          << FormatDouble(t.state.y) << ',' << FormatDouble(t.action.x) << ','
          << FormatDouble(t.action.y) << ',' << FormatDouble(t.next_state.x)
          << ',' << FormatDouble(t.next_state.y) << '\n';
    }
  }
  const GeneratorParams& p = data.params();
  json manifest = {
      {"format", kDatasetFormatVersion},
      {"maze", data.maze().name()},
      {"maze_rows", data.maze().Rows()},
      {"cell_size", data.maze().cell_size()},
      {"dataset_type", DatasetTypeName(p.type)},
      {"n_traj", p.n_traj},
      {"max_segment_cells", p.max_segment_cells},
      {"noise_frac", p.noise_frac},
      {"seed", p.seed},
      {"num_transitions", data.size()},
  };
  std::ofstream out(dir / kDatasetManifestName, std::ios::trunc);
  out << manifest.dump(2) << '\n';
}

Dataset ReadDataset(const std::filesystem::path& dir) {
  const auto csv_path = dir / kDatasetCsvName;
  const auto manifest_path = dir / kDatasetManifestName;
  if (!std::filesystem::exists(csv_path) ||
      !std::filesystem::exists(manifest_path)) {
    throw InvalidArgument("no dataset at " + dir.string());
  }
  json manifest;
  try {
    std::ifstream in(manifest_path);
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw CorruptArtifact("dataset manifest: " + std::string(e.what()));
  }
  GeneratorParams params;
  std::string maze_name;
  std::vector<std::string> rows;
  double cell_size = 0.0;
  try {
    if (manifest.at("format").get<int>() != kDatasetFormatVersion) {
      throw CorruptArtifact("unsupported dataset format version");
    }
    maze_name = manifest.at("maze").get<std::string>();
    rows = manifest.at("maze_rows").get<std::vector<std::string>>();
    cell_size = manifest.at("cell_size").get<double>();
    params.type = ParseDatasetType(manifest.at("dataset_type").get<std::string>());
    params.n_traj = manifest.at("n_traj").get<int>();
    params.max_segment_cells = manifest.at("max_segment_cells").get<int>();
    params.noise_frac = manifest.at("noise_frac").get<double>();
    params.seed = manifest.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw CorruptArtifact("dataset manifest: " + std::string(e.what()));
  }
  std::vector<Transition> transitions;
  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);
  if (Trim(line) != "traj_id,step,sx,sy,ax,ay,nsx,nsy") {
    throw CorruptArtifact("unexpected dataset header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) {
      throw CorruptArtifact("dataset line " + std::to_string(line_no) +
                            " has " + std::to_string(f.size()) + " fields");
    }
    Transition t;
    t.traj_id = ParseInt(f[0], line_no);
    t.step = ParseInt(f[1], line_no);
    t.state = {ParseDouble(f[2], line_no), ParseDouble(f[3], line_no)};
    t.action = {ParseDouble(f[4], line_no), ParseDouble(f[5], line_no)};
    t.next_state = {ParseDouble(f[6], line_no), ParseDouble(f[7], line_no)};
    transitions.push_back(t);
  }
  try {
    return Dataset(MazeSpec(maze_name, rows, cell_size), params,
                   std::move(transitions));
  } catch (const InvalidArgument& e) {
    throw CorruptArtifact(e.what());
  }
}

}  // namespace eikgcrl::mazeworld
