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

#ifndef EIKGCRL_MAZEWORLD_MAZE_H_
#define EIKGCRL_MAZEWORLD_MAZE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eikgcrl::mazeworld {

// Integer grid index. `x` is the column, `y` the row (row 0 is the first line
// of a maze file).
struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Continuous position in length units. Cell (cx, cy) covers
// [cx * cell_size, (cx + 1) * cell_size) x [cy * cell_size, (cy + 1) * cell_size).
struct State {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const State&, const State&) = default;
};

inline constexpr int kUnreachable = -1;

// Occupancy grid with physical scale. The outer boundary is fully walled and
// at least two free cells are mutually reachable.
class MazeSpec {
 public:
  // Throws InvalidArgument if the invariants above do not hold or the rows
  // are ragged.
  MazeSpec(std::string name, std::vector<std::string> rows, double cell_size);

  const std::string& name() const { return name_; }
  double cell_size() const { return cell_size_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double extent_x() const { return width_ * cell_size_; }
  double extent_y() const { return height_ * cell_size_; }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  bool IsWall(Cell c) const { return !InBounds(c) || walls_[Index(c)]; }
  bool IsFree(Cell c) const { return !IsWall(c); }

  // Floor division of a position onto the grid.
  Cell CellOf(State s) const;
  State CenterOf(Cell c) const;
  // True if `s` lies inside the maze and its cell is free.
  bool IsFreeState(State s) const;

  int Index(Cell c) const { return c.y * width_ + c.x; }
  Cell CellAt(int index) const { return {index % width_, index / width_}; }

  // Free cells in row-major order.
  const std::vector<Cell>& free_cells() const { return free_cells_; }
  // Original text rows ('#' wall, '.' free).
  std::vector<std::string> Rows() const;

  // 4-connected breadth-first cell distances from `from`; kUnreachable for
  // walls and disconnected cells. Indexed by Index(cell).
  std::vector<int> BfsDistances(Cell from) const;
  // Shortest 4-connected cell path, inclusive of both ends. Empty if
  // unreachable.
  std::vector<Cell> ShortestPath(Cell from, Cell to) const;
  // Largest finite BFS distance over all free cell pairs.
  int Diameter() const;
  // True if all free cells form one 4-connected component.
  bool IsConnected() const;

  // Euclidean distance from `s` to the closest wall-cell rectangle. Zero on
  // a wall face.
  double NearestObstacleDistance(State s) const;

 private:
  std::string name_;
  double cell_size_;
  int width_ = 0;
  int height_ = 0;
  std::vector<bool> walls_;
  std::vector<Cell> free_cells_;
};

// Parses '#' / '.' text. Blank lines are ignored.
MazeSpec ParseMaze(std::string name, std::string_view text, double cell_size);
MazeSpec LoadMazeFile(const std::filesystem::path& path, double cell_size);

inline constexpr double kDefaultCellSize = 4.0;

// Built-ins: "medium" (7x7), "large" (11x11), "giant" (15x15), walls
// included.
std::vector<std::string> BuiltinMazeNames();
bool IsBuiltinMaze(std::string_view name);
MazeSpec BuiltinMaze(std::string_view name, double cell_size = kDefaultCellSize);

// Built-in name, or a path to a maze text file.
MazeSpec ResolveMaze(std::string_view name_or_path,
                     double cell_size = kDefaultCellSize);

// Point-to-axis-aligned-rectangle Euclidean distance.
double PointRectDistance(State p, double x0, double y0, double x1, double y1);

}  // namespace eikgcrl::mazeworld

#endif  // EIKGCRL_MAZEWORLD_MAZE_H_
