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

#include "eikgcrl/oracle/agreement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "eikgcrl/errors.h"

namespace eikgcrl::oracle {

using mazeworld::Cell;

SpeedFn ProfileSpeed(const valuelearn::SpeedProfile& profile,
                     const mazeworld::MazeSpec& maze) {
  valuelearn::ValidateSpeedProfile(profile);
  return [profile, maze](mazeworld::State s) {
    return valuelearn::Speed(s, profile, maze);
  };
}

namespace {

std::vector<double> AverageRanks(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double SpearmanRho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InvalidArgument("Spearman needs two equal samples of size >= 2");
  }
  const std::vector<double> ra = AverageRanks(a);
  const std::vector<double> rb = AverageRanks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return std::nan("");
  return cov / std::sqrt(va * vb);
}

AgreementReport FieldValueAgreement(const ValueFn& value,
                                    const DistanceField& field) {
  const auto& maze = field.maze;
  const auto& cells = maze.free_cells();
  Eigen::MatrixXd states(cells.size(), 2);
  Eigen::MatrixXd goals(cells.size(), 2);
  const mazeworld::State g = maze.CenterOf(field.goal_cell);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const mazeworld::State c = maze.CenterOf(cells[i]);
    states.row(i) << c.x, c.y;
    goals.row(i) << g.x, g.y;
  }
  const Eigen::VectorXd v = value(states, goals);
  std::vector<double> cell_value(maze.width() * maze.height(), std::nan(""));
  std::vector<double> neg_v, times;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cell_value[maze.Index(cells[i])] = v(i);
    const double t = field.At(cells[i]);
    if (std::isinf(t)) continue;
    neg_v.push_back(-v(i));
    times.push_back(t);
  }
  AgreementReport rep;
  rep.cells = static_cast<int>(times.size());
  if (!v.allFinite()) {
    rep.message = "value field is not finite";
    return rep;
  }
  if (times.size() < 2) {
    rep.message = "fewer than two reachable cells";
    return rep;
  }
  rep.spearman_rho = SpearmanRho(neg_v, times);
  if (std::isnan(rep.spearman_rho)) {
    rep.message = "value or travel time is constant; rank correlation undefined";
    return rep;
  }
  double wall_sum = 0.0, open_sum = 0.0;
  int wall_n = 0, open_n = 0;
  for (const Cell& c : cells) {
    for (const Cell d : {Cell{2, 0}, Cell{0, 2}}) {
      const Cell far{c.x + d.x, c.y + d.y};
      const Cell mid{c.x + d.x / 2, c.y + d.y / 2};
      if (!maze.InBounds(far) || maze.IsWall(far)) continue;
      const double gap = std::abs(cell_value[maze.Index(c)] -
                                  cell_value[maze.Index(far)]);
      if (maze.IsWall(mid)) {
        wall_sum += gap;
        ++wall_n;
      } else {
        open_sum += gap;
        ++open_n;
      }
    }
  }
  rep.wall_gap = wall_n ? wall_sum / wall_n : 0.0;
  rep.open_gap = open_n ? open_sum / open_n : 0.0;
  rep.wall_contrast = rep.wall_gap - rep.open_gap;
  rep.valid = true;
  return rep;
}

}  // namespace eikgcrl::oracle
