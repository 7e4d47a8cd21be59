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

#include "eikgcrl/evalkit/oracle_policy.h"

#include <map>
#include <memory>
#include <mutex>

namespace eikgcrl::evalkit {

using mazeworld::Cell;
using mazeworld::State;

namespace {

struct FieldCache {
  std::mutex mu;
  std::map<int, std::shared_ptr<const oracle::DistanceField>> fields;
};

}  // namespace

Policy OracleGreedyPolicy(const mazeworld::MazeSpec& maze, double max_action) {
  auto cache = std::make_shared<FieldCache>();
  return [maze, max_action, cache](const MatrixXd& s, const MatrixXd& g,
                                   std::span<Rng>) {
    MatrixXd out(s.rows(), 2);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      const State pos{s(i, 0), s(i, 1)};
      const State goal{g(i, 0), g(i, 1)};
      const Cell gc = maze.CellOf(goal);
      std::shared_ptr<const oracle::DistanceField> field;
      {
        std::lock_guard lock(cache->mu);
        auto& slot = cache->fields[maze.Index(gc)];
        if (!slot) {
          slot = std::make_shared<const oracle::DistanceField>(
              oracle::FastMarch(maze, gc, oracle::UnitSpeed(), 11));
        }
        field = slot;
      }
      const Cell here = maze.CellOf(pos);
      State target = goal;
      if (!(here == gc)) {
        double best = field->At(here);
        for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
          const Cell n{here.x + d.x, here.y + d.y};
          if (maze.IsFree(n) && field->At(n) < best) {
            best = field->At(n);
            target = maze.CenterOf(n);
          }
        }
      }
      double dx = target.x - pos.x, dy = target.y - pos.y;
      const double len = std::hypot(dx, dy);
      if (len > max_action) {
        dx *= max_action / len;
        dy *= max_action / len;
      }
      out(i, 0) = dx;
      out(i, 1) = dy;
    }
    return out;
  };
}

}  // namespace eikgcrl::evalkit
