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

#ifndef EIKGCRL_ORACLE_DISTANCE_FIELD_H_
#define EIKGCRL_ORACLE_DISTANCE_FIELD_H_

#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive speed at a position; evaluated on solver nodes only.
using SpeedFn = std::function<double(mazeworld::State)>;

inline SpeedFn UnitSpeed() {
  return [](mazeworld::State) { return 1.0; };
}

// Travel time from every cell center to the goal cell center. Walls and
// cells disconnected from the goal hold +inf.
struct DistanceField {
  mazeworld::MazeSpec maze;
  mazeworld::Cell goal_cell;
  std::vector<double> times;  // indexed by maze.Index(cell)
  std::string solver;
  std::string speed_profile = "unit";
  int resolution = 1;  // refine factor or subdivision used by the solver

  double At(mazeworld::Cell c) const { return times[maze.Index(c)]; }
};

// First-order upwind fast marching for ||grad T|| = 1 / S on nodes at the
// centers of a `refine` x `refine` subdivision of every free cell (`refine`
// odd, so cell centers are nodes). Nodes inside the goal cell start from
// their exact straight-line time. Ties in the heap are broken by node index.
// Throws InvalidArgument if the goal is a wall or `refine` is even or < 1.
DistanceField FastMarch(const mazeworld::MazeSpec& maze,
                        mazeworld::Cell goal_cell, const SpeedFn& speed,
                        int refine = 41);

// Dijkstra on the vertices of a `subdivision` x `subdivision` grid per cell
// with 8-connected moves that never cross a wall interior; edge cost is
// length / mean endpoint speed. `subdivision` must be even so cell centers
// are vertices. Independent of FastMarch by construction.
DistanceField DijkstraReference(const mazeworld::MazeSpec& maze,
                                mazeworld::Cell goal_cell,
                                const SpeedFn& speed, int subdivision = 4);

// Max over cells finite in both fields of |a - b| / max(|a|, |b|), skipping
// the goal cell. Returns +inf if the fields disagree on reachability.
double MaxRelativeDifference(const DistanceField& a, const DistanceField& b);

// CSV `cx,cy,time` (free cells only, row-major, "inf" when unreachable).
std::string DistanceFieldCsv(const DistanceField& field);
// Writes distance_field.csv and distance_field.json into `dir`.
void WriteDistanceField(const DistanceField& field,
                        const std::filesystem::path& dir);

}  // namespace eikgcrl::oracle

#endif  // EIKGCRL_ORACLE_DISTANCE_FIELD_H_
