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
#include <queue>
#include <utility>
#include <vector>

#include "eikgcrl/errors.h"
#include "eikgcrl/oracle/distance_field.h"

namespace eikgcrl::oracle {

using mazeworld::Cell;
using mazeworld::MazeSpec;
using mazeworld::State;

namespace {

using HeapItem = std::pair<double, int>;
using MinHeap =
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void CheckGoal(const MazeSpec& maze, Cell goal) {
  if (!maze.InBounds(goal) || maze.IsWall(goal)) {
    throw InvalidArgument("goal cell is not a free cell");
  }
}

}  // namespace

DistanceField FastMarch(const MazeSpec& maze, Cell goal_cell,
                        const SpeedFn& speed, int refine) {
  CheckGoal(maze, goal_cell);
  if (refine < 1 || refine % 2 == 0) {
    throw InvalidArgument("fast marching refine factor must be odd and >= 1");
  }
  const int nx = maze.width() * refine;
  const int ny = maze.height() * refine;
  const double h = maze.cell_size() / refine;
  const int n = nx * ny;
  std::vector<char> free(n, 0);
  std::vector<double> node_speed(n, 0.0);
  std::vector<double> inv_speed(n, 0.0);
  auto pos = [&](int i, int j) -> State {
    return {(i + 0.5) * h, (j + 0.5) * h};
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!maze.IsFree({i / refine, j / refine})) continue;
      const int k = j * nx + i;
      free[k] = 1;
      const double s = speed(pos(i, j));
      if (!(s > 0.0) || !std::isfinite(s)) {
        throw InvalidArgument("speed must be positive and finite on free nodes");
      }
      node_speed[k] = s;
      inv_speed[k] = 1.0 / s;
    }
  }

  std::vector<double> t(n, kInf);
  std::vector<char> known(n, 0);
  std::vector<char> fixed(n, 0);
  MinHeap heap;
  const State g = maze.CenterOf(goal_cell);
  const double s_goal = speed(g);
  for (int j = goal_cell.y * refine; j < (goal_cell.y + 1) * refine; ++j) {
    for (int i = goal_cell.x * refine; i < (goal_cell.x + 1) * refine; ++i) {
      const int k = j * nx + i;
      const State p = pos(i, j);
      const double dist = std::hypot(p.x - g.x, p.y - g.y);
      t[k] = 2.0 * dist / (s_goal + node_speed[k]);
      fixed[k] = 1;
      heap.push({t[k], k});
    }
  }

  auto neighbor_min = [&](int i, int j, int di, int dj) {
    double best = kInf;
    for (int sgn : {-1, 1}) {
      const int a = i + sgn * di;
      const int b = j + sgn * dj;
      if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
      const int k = b * nx + a;
      if (free[k] && known[k]) best = std::min(best, t[k]);
    }
    return best;
  };

  while (!heap.empty()) {
    const auto [tk, k] = heap.top();
    heap.pop();
    if (known[k] || tk != t[k]) continue;
    known[k] = 1;
    const int i = k % nx;
    const int j = k / nx;
    const int nbr[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : nbr) {
      const int a = i + d[0];
      const int b = j + d[1];
      if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
      const int m = b * nx + a;
      if (!free[m] || known[m] || fixed[m]) continue;
      const double tx = neighbor_min(a, b, 1, 0);
      const double ty = neighbor_min(a, b, 0, 1);
      const double f = h * inv_speed[m];
      double cand;
      if (std::isinf(tx) || std::isinf(ty) || std::abs(tx - ty) >= f) {
        cand = std::min(tx, ty) + f;
      } else {
        const double diff = tx - ty;
        cand = 0.5 * (tx + ty + std::sqrt(2.0 * f * f - diff * diff));
      }
      if (cand < t[m]) {
        t[m] = cand;
        heap.push({cand, m});
      }
    }
  }

  DistanceField out{maze, goal_cell,
                    std::vector<double>(maze.width() * maze.height(), kInf),
                    "fast_march", "unit", refine};
  const int mid = refine / 2;
  for (const Cell& c : maze.free_cells()) {
    out.times[maze.Index(c)] =
        t[(c.y * refine + mid) * nx + c.x * refine + mid];
  }
  return out;
}

}  // namespace eikgcrl::oracle
