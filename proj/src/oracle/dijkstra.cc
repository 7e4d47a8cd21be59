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
#include <numbers>
#include <queue>
#include <utility>
#include <vector>

#include "eikgcrl/errors.h"
#include "eikgcrl/oracle/distance_field.h"

namespace eikgcrl::oracle {

using mazeworld::Cell;
using mazeworld::MazeSpec;
using mazeworld::State;

DistanceField DijkstraReference(const MazeSpec& maze, Cell goal_cell,
                                const SpeedFn& speed, int subdivision) {
  if (!maze.InBounds(goal_cell) || maze.IsWall(goal_cell)) {
    throw InvalidArgument("goal cell is not a free cell");
  }
  if (subdivision < 2 || subdivision % 2 != 0) {
    throw InvalidArgument("Dijkstra subdivision must be even and >= 2");
  }
  const int sub = subdivision;
  const int nx = maze.width() * sub + 1;
  const int ny = maze.height() * sub + 1;
  const double h = maze.cell_size() / sub;
  const int n = nx * ny;
  // Sub-square (a, b) spans vertices (a, b)..(a + 1, b + 1).
  auto square_free = [&](int a, int b) {
    if (a < 0 || b < 0 || a >= nx - 1 || b >= ny - 1) return false;
    return maze.IsFree({a / sub, b / sub});
  };
  std::vector<char> usable(n, 0);
  std::vector<double> node_speed(n, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const bool ll = square_free(i - 1, j - 1), lr = square_free(i, j - 1);
      const bool ul = square_free(i - 1, j), ur = square_free(i, j);
      if (!(ll || lr || ul || ur)) continue;
      // A corner touched only by two diagonally opposite free squares is a
      // zero-width pinch, not a passage.
      const int count = ll + lr + ul + ur;
      if (count == 2 && ((ll && ur) || (lr && ul))) continue;
      const int k = j * nx + i;
      usable[k] = 1;
      const double s = speed({i * h, j * h});
      if (!(s > 0.0) || !std::isfinite(s)) {
        throw InvalidArgument("speed must be positive and finite on free nodes");
      }
      node_speed[k] = s;
    }
  }

  std::vector<double> t(n, kInf);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const State g = maze.CenterOf(goal_cell);
  const double s_goal = speed(g);
  for (int j = goal_cell.y * sub; j <= (goal_cell.y + 1) * sub; ++j) {
    for (int i = goal_cell.x * sub; i <= (goal_cell.x + 1) * sub; ++i) {
      const int k = j * nx + i;
      if (!usable[k]) continue;
      const double dist = std::hypot(i * h - g.x, j * h - g.y);
      t[k] = 2.0 * dist / (s_goal + node_speed[k]);
      heap.push({t[k], k});
    }
  }

  const double diag = h * std::numbers::sqrt2;
  while (!heap.empty()) {
    const auto [tk, k] = heap.top();
    heap.pop();
    if (done[k] || tk != t[k]) continue;
    done[k] = 1;
    const int i = k % nx;
    const int j = k / nx;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        const int m = b * nx + a;
        if (!usable[m] || done[m]) continue;
        bool open;
        double len;
        if (di != 0 && dj != 0) {
          open = square_free(std::min(i, a), std::min(j, b));
          len = diag;
        } else if (di != 0) {
          const int sa = std::min(i, a);
          open = square_free(sa, j - 1) || square_free(sa, j);
          len = h;
        } else {
          const int sb = std::min(j, b);
          open = square_free(i - 1, sb) || square_free(i, sb);
          len = h;
        }
        if (!open) continue;
        const double cand =
            t[k] + len / (0.5 * (node_speed[k] + node_speed[m]));
        if (cand < t[m]) {
          t[m] = cand;
          heap.push({cand, m});
        }
      }
    }
  }

  DistanceField out{maze, goal_cell,
                    std::vector<double>(maze.width() * maze.height(), kInf),
                    "dijkstra", "unit", subdivision};
  const int mid = sub / 2;
  for (const Cell& c : maze.free_cells()) {
    out.times[maze.Index(c)] = t[(c.y * sub + mid) * nx + c.x * sub + mid];
  }
  return out;
}

}  // namespace eikgcrl::oracle
