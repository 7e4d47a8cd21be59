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

#include "eikgcrl/evalkit/export.h"

#include <algorithm>
#include <sstream>
#include <vector>

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dataset.h"

namespace eikgcrl::evalkit {

using Eigen::MatrixXd;
using mazeworld::MazeSpec;
using mazeworld::State;

MatrixXd GridPoints(const MazeSpec& maze, int resolution) {
  if (resolution < 1) throw InvalidArgument("resolution must be >= 1");
  const int nx = resolution * maze.width();
  const int ny = resolution * maze.height();
  const double h = maze.cell_size() / resolution;
  MatrixXd pts(static_cast<Eigen::Index>(nx) * ny, 2);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      pts(j * nx + i, 0) = (i + 0.5) * h;
      pts(j * nx + i, 1) = (j + 0.5) * h;
    }
  }
  return pts;
}

namespace {

MatrixXd GoalRows(State goal, Eigen::Index n) {
  MatrixXd g(n, 2);
  g.col(0).setConstant(goal.x);
  g.col(1).setConstant(goal.y);
  return g;
}

std::string GridCsv(const char* column, const MazeSpec& maze,
                    const MatrixXd& pts, const Eigen::VectorXd& values) {
  std::ostringstream os;
  os << "x,y," << column << ",in_wall\n";
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const bool wall = !maze.IsFreeState({pts(i, 0), pts(i, 1)});
    os << mazeworld::FormatDouble(pts(i, 0)) << ','
       << mazeworld::FormatDouble(pts(i, 1)) << ','
       << mazeworld::FormatDouble(values(i)) << ',' << (wall ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace

std::string ContourCsv(const valuelearn::ValueQuery& value,
                       const MazeSpec& maze, State goal, int resolution) {
  const MatrixXd pts = GridPoints(maze, resolution);
  return GridCsv("value", maze, pts, value(pts, GoalRows(goal, pts.rows())));
}

std::string GradNormCsv(const valuelearn::GradQuery& grad,
                        const MazeSpec& maze, State goal, int resolution) {
  const MatrixXd pts = GridPoints(maze, resolution);
  const Eigen::VectorXd norms =
      grad(pts, GoalRows(goal, pts.rows())).rowwise().norm();
  return GridCsv("grad_norm", maze, pts, norms);
}

double MedianFreeGradNorm(const valuelearn::GradQuery& grad,
                          const MazeSpec& maze, State goal, int resolution) {
  const MatrixXd pts = GridPoints(maze, resolution);
  const Eigen::VectorXd norms =
      grad(pts, GoalRows(goal, pts.rows())).rowwise().norm();
  std::vector<double> free;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    if (maze.IsFreeState({pts(i, 0), pts(i, 1)})) free.push_back(norms(i));
  }
  if (free.empty()) throw InvalidArgument("grid has no free points");
  const std::size_t mid = free.size() / 2;
  std::nth_element(free.begin(), free.begin() + mid, free.end());
  if (free.size() % 2 == 1) return free[mid];
  const double upper = free[mid];
  return 0.5 * (upper + *std::max_element(free.begin(), free.begin() + mid));
}

}  // namespace eikgcrl::evalkit
