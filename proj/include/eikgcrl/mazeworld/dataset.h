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

#ifndef EIKGCRL_MAZEWORLD_DATASET_H_
#define EIKGCRL_MAZEWORLD_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eikgcrl/mazeworld/dynamics.h"
#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::mazeworld {

enum class DatasetType { kNavigate, kStitch };

const char* DatasetTypeName(DatasetType t);
DatasetType ParseDatasetType(std::string_view name);

struct Transition {
  State state;
  Action action;
  State next_state;
  int traj_id = 0;
  int step = 0;
};

struct GeneratorParams {
  DatasetType type = DatasetType::kNavigate;
  int n_traj = 1000;
  // Stitch only: cap on the BFS cell distance between a trajectory's first
  // and last state.
  int max_segment_cells = 4;
  std::uint64_t seed = 0;
  // Controller noise standard deviation as a fraction of max_action.
  double noise_frac = 0.2;
};

// Offline transitions grouped into contiguous trajectories 0..n-1, each
// ordered by step starting at 0.
class Dataset {
 public:
  // Throws InvalidArgument when trajectories are not contiguous/ordered or
  // a stored state is not free.
  Dataset(MazeSpec maze, GeneratorParams params,
          std::vector<Transition> transitions);

  const MazeSpec& maze() const { return maze_; }
  const GeneratorParams& params() const { return params_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::size_t size() const { return transitions_.size(); }

  int num_trajectories() const { return static_cast<int>(begin_.size()); }
  // Number of transitions in trajectory `traj`.
  int Length(int traj) const;
  std::size_t Begin(int traj) const { return begin_[traj]; }
  // State at `step` of trajectory `traj`; step == Length(traj) is the final
  // next_state.
  State StateAt(int traj, int step) const;

 private:
  MazeSpec maze_;
  GeneratorParams params_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> begin_;
};

// Long start-to-goal routes: goals are at least half the maze diameter away
// (in BFS cells) from the start. Deterministic in (maze, params).
Dataset GenerateNavigateDataset(const MazeSpec& maze, GeneratorParams params);

// Short segments whose start and end cells are at most
// `params.max_segment_cells` apart, so long-range goals need stitching.
Dataset GenerateStitchDataset(const MazeSpec& maze, GeneratorParams params);

Dataset GenerateDataset(const MazeSpec& maze, const GeneratorParams& params);

// Fraction of free cells visited by any stored state.
double CellCoverage(const Dataset& data);

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr const char* kDatasetCsvName = "dataset.csv";
inline constexpr const char* kDatasetManifestName = "manifest.json";

// Writes dataset.csv (traj_id,step,sx,sy,ax,ay,nsx,nsy; round-trip exact
// decimal) and manifest.json into `dir`.
void WriteDataset(const Dataset& data, const std::filesystem::path& dir);
// Throws InvalidArgument for missing files, CorruptArtifact for bad content.
Dataset ReadDataset(const std::filesystem::path& dir);

// Shortest round-trip decimal for a double.
std::string FormatDouble(double v);

}  // namespace eikgcrl::mazeworld

#endif  // EIKGCRL_MAZEWORLD_DATASET_H_
