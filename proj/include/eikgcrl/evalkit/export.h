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

#ifndef EIKGCRL_EVALKIT_EXPORT_H_
#define EIKGCRL_EVALKIT_EXPORT_H_

#include <string>

#include "eikgcrl/mazeworld/maze.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::evalkit {

// Regular grid of `resolution` points per cell along each axis, at
// ((i + 0.5) / resolution) * cell_size; row-major, y outer.
Eigen::MatrixXd GridPoints(const mazeworld::MazeSpec& maze, int resolution);

// `x,y,value,in_wall` with in_wall 0/1. (resolution W) x (resolution H) rows.
std::string ContourCsv(const valuelearn::ValueQuery& value,
                       const mazeworld::MazeSpec& maze, mazeworld::State goal,
                       int resolution);
// `x,y,grad_norm,in_wall`, same grid.
std::string GradNormCsv(const valuelearn::GradQuery& grad,
                        const mazeworld::MazeSpec& maze, mazeworld::State goal,
                        int resolution);

// Median ||grad_s V|| over grid points in free cells.
double MedianFreeGradNorm(const valuelearn::GradQuery& grad,
                          const mazeworld::MazeSpec& maze,
                          mazeworld::State goal, int resolution);

}  // namespace eikgcrl::evalkit

#endif  // EIKGCRL_EVALKIT_EXPORT_H_
