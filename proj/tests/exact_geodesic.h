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

#ifndef EIKGCRL_TESTS_EXACT_GEODESIC_H_
#define EIKGCRL_TESTS_EXACT_GEODESIC_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "eikgcrl/mazeworld/maze.h"

namespace eikgcrl::testing_oracle {

// Exact Euclidean shortest paths among the wall squares of a maze: Dijkstra
// on the visibility graph of the convex wall corners plus the endpoints.
class ExactGeodesic {
 public:
  explicit ExactGeodesic(const mazeworld::MazeSpec& maze) : maze_(maze) {
    const double h = maze.cell_size();
    for (int y = 0; y <= maze.height(); ++y) {
      for (int x = 0; x <= maze.width(); ++x) {
        const int free = maze.IsFree({x - 1, y - 1}) + maze.IsFree({x, y - 1}) +
                         maze.IsFree({x - 1, y}) + maze.IsFree({x, y});
        if (free == 3) corners_.push_back({x * h, y * h});
      }
    }
  }

  // Segment stays in the closed free region: it never enters the open
  // interior of a wall square.
  bool Visible(mazeworld::State a, mazeworld::State b) const {
    const double h = maze_.cell_size();
    for (int y = 0; y < maze_.height(); ++y) {
      for (int x = 0; x < maze_.width(); ++x) {
        if (!maze_.IsWall({x, y})) continue;
        // Grow into wall neighbors so seams between walls are not gaps.
        const double x0 = x * h - (maze_.IsWall({x - 1, y}) ? h / 2 : 0.0);
        const double x1 = (x + 1) * h + (maze_.IsWall({x + 1, y}) ? h / 2 : 0.0);
        const double y0 = y * h - (maze_.IsWall({x, y - 1}) ? h / 2 : 0.0);
        const double y1 = (y + 1) * h + (maze_.IsWall({x, y + 1}) ? h / 2 : 0.0);
        if (CrossesOpenBox(a, b, x0, y0, x1, y1)) {
          return false;
        }
      }
    }
    return true;
  }

  // Distances from `source` to each of `targets`.
  std::vector<double> From(mazeworld::State source,
                           const std::vector<mazeworld::State>& targets) const {
    std::vector<mazeworld::State> nodes = corners_;
    nodes.push_back(source);
    const int src = static_cast<int>(nodes.size()) - 1;
    const int n = static_cast<int>(nodes.size());
    std::vector<double> d(n, kInf);
    std::vector<char> done(n, 0);
    d[src] = 0.0;
    for (int it = 0; it < n; ++it) {
      int u = -1;
      for (int i = 0; i < n; ++i) {
        if (!done[i] && (u < 0 || d[i] < d[u])) u = i;
      }
      if (u < 0 || std::isinf(d[u])) break;
      done[u] = 1;
      for (int v = 0; v < n; ++v) {
        if (done[v] || !Visible(nodes[u], nodes[v])) continue;
        d[v] = std::min(d[v], d[u] + Dist(nodes[u], nodes[v]));
      }
    }
    std::vector<double> out;
    for (const auto& t : targets) {
      double best = kInf;
      for (int i = 0; i < n; ++i) {
        if (!std::isinf(d[i]) && Visible(nodes[i], t)) {
          best = std::min(best, d[i] + Dist(nodes[i], t));
        }
      }
      out.push_back(best);
    }
    return out;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  static double Dist(mazeworld::State a, mazeworld::State b) {
    return std::hypot(a.x - b.x, a.y - b.y);
  }

  // Liang-Barsky clip of segment a-b against the open box; true if a piece
  // of positive length lies strictly inside.
  static bool CrossesOpenBox(mazeworld::State a, mazeworld::State b, double x0,
                             double y0, double x1, double y1) {
    const double eps = 1e-9;
    double t0 = 0.0, t1 = 1.0;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - (x0 + eps), (x1 - eps) - a.x, a.y - (y0 + eps),
                         (y1 - eps) - a.y};
    for (int i = 0; i < 4; ++i) {
      if (p[i] == 0.0) {
        if (q[i] < 0.0) return false;
      } else {
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
          t0 = std::max(t0, r);
        } else {
          t1 = std::min(t1, r);
        }
        if (t0 > t1) return false;
      }
    }
    return t1 - t0 > 1e-12;
  }

  const mazeworld::MazeSpec& maze_;
  std::vector<mazeworld::State> corners_;
};

}  // namespace eikgcrl::testing_oracle

#endif  // EIKGCRL_TESTS_EXACT_GEODESIC_H_
