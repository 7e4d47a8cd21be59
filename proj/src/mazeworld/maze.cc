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

#include "eikgcrl/mazeworld/maze.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "eikgcrl/errors.h"

namespace eikgcrl::mazeworld {
namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

// Corridor mazes; every free cell reaches every other.
constexpr const char* kMedium =
    "#######\n"
    "#...#.#\n"
    "#.#.#.#\n"
    "#.#...#\n"
    "#.###.#\n"
    "#.....#\n"
    "#######\n";

constexpr const char* kLarge =
    "###########\n"
    "#.....#...#\n"
    "#.###.#.#.#\n"
    "#.#...#.#.#\n"
    "#.#.###.#.#\n"
    "#.#.....#.#\n"
    "#.#####.#.#\n"
    "#...#...#.#\n"
    "###.#.###.#\n"
    "#.....#...#\n"
    "###########\n";

constexpr const char* kGiant =
    "###############\n"
    "#.....#.......#\n"
    "#.###.#.#####.#\n"
    "#.#...#.....#.#\n"
    "#.#.#######.#.#\n"
    "#.#.......#.#.#\n"
    "#.#######.#.#.#\n"
    "#.....#...#...#\n"
    "#####.#.#####.#\n"
    "#...#.#.....#.#\n"
    "#.#.#.#####.#.#\n"
    "#.#...#.....#.#\n"
    "#.#####.#####.#\n"
    "#.............#\n"
    "###############\n";

}  // namespace

MazeSpec::MazeSpec(std::string name, std::vector<std::string> rows,
                   double cell_size)
    : name_(std::move(name)), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidArgument("cell_size must be positive");
  }
  if (rows.empty() || rows[0].empty()) throw InvalidArgument("empty maze");
  height_ = static_cast<int>(rows.size());
  width_ = static_cast<int>(rows[0].size());
  walls_.assign(static_cast<std::size_t>(width_) * height_, true);
  for (int y = 0; y < height_; ++y) {
    if (static_cast<int>(rows[y].size()) != width_) {
      throw InvalidArgument("maze rows have different lengths");
    }
    for (int x = 0; x < width_; ++x) {
      const char ch = rows[y][x];
      if (ch != '#' && ch != '.') {
        throw InvalidArgument(std::string("unexpected maze character '") + ch +
                              "'");
      }
      walls_[Index({x, y})] = ch == '#';
      if (ch == '.') free_cells_.push_back({x, y});
    }
  }
  for (int x = 0; x < width_; ++x) {
    if (!walls_[Index({x, 0})] || !walls_[Index({x, height_ - 1})]) {
      throw InvalidArgument("maze boundary must be fully walled");
    }
  }
  for (int y = 0; y < height_; ++y) {
    if (!walls_[Index({0, y})] || !walls_[Index({width_ - 1, y})]) {
      throw InvalidArgument("maze boundary must be fully walled");
    }
  }
  bool has_pair = false;
  for (Cell c : free_cells_) {
    for (int k = 0; k < 4 && !has_pair; ++k) {
      has_pair = IsFree({c.x + kDx[k], c.y + kDy[k]});
    }
    if (has_pair) break;
  }
  if (!has_pair) {
    throw InvalidArgument("maze needs a connected free region of >= 2 cells");
  }
}

Cell MazeSpec::CellOf(State s) const {
  return {static_cast<int>(std::floor(s.x / cell_size_)),
          static_cast<int>(std::floor(s.y / cell_size_))};
}

State MazeSpec::CenterOf(Cell c) const {
  return {(c.x + 0.5) * cell_size_, (c.y + 0.5) * cell_size_};
}

bool MazeSpec::IsFreeState(State s) const {
  if (!std::isfinite(s.x) || !std::isfinite(s.y)) return false;
  if (s.x <= 0.0 || s.y <= 0.0 || s.x >= extent_x() || s.y >= extent_y()) {
    return false;
  }
  return IsFree(CellOf(s));
}

std::vector<std::string> MazeSpec::Rows() const {
  std::vector<std::string> rows(height_, std::string(width_, '.'));
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (walls_[Index({x, y})]) rows[y][x] = '#';
    }
  }
  return rows;
}

std::vector<int> MazeSpec::BfsDistances(Cell from) const {
  std::vector<int> dist(walls_.size(), kUnreachable);
  if (IsWall(from)) return dist;
  std::deque<Cell> queue{from};
  dist[Index(from)] = 0;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (int k = 0; k < 4; ++k) {
      Cell n{c.x + kDx[k], c.y + kDy[k]};
      if (IsWall(n) || dist[Index(n)] != kUnreachable) continue;
      dist[Index(n)] = dist[Index(c)] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

std::vector<Cell> MazeSpec::ShortestPath(Cell from, Cell to) const {
  if (IsWall(from) || IsWall(to)) return {};
  // Walk downhill on distances from the target; ties broken by the fixed
  // neighbor order, so paths are deterministic.
  const std::vector<int> dist = BfsDistances(to);
  if (dist[Index(from)] == kUnreachable) return {};
  std::vector<Cell> path{from};
  Cell c = from;
  while (!(c == to)) {
    for (int k = 0; k < 4; ++k) {
      Cell n{c.x + kDx[k], c.y + kDy[k]};
      if (!IsWall(n) && dist[Index(n)] == dist[Index(c)] - 1) {
        c = n;
        break;
      }
    }
    path.push_back(c);
  }
  return path;
}

int MazeSpec::Diameter() const {
  int best = 0;
  for (Cell c : free_cells_) {
    for (int d : BfsDistances(c)) best = std::max(best, d);
  }
  return best;
}

bool MazeSpec::IsConnected() const {
  const std::vector<int> dist = BfsDistances(free_cells_.front());
  return std::all_of(free_cells_.begin(), free_cells_.end(),
                     [&](Cell c) { return dist[Index(c)] != kUnreachable; });
}

double MazeSpec::NearestObstacleDistance(State s) const {
  // Ring search around the containing cell. Every cell on Chebyshev ring
  // k + 1 is at least k * cell_size away, so the search can stop once the
  // best distance found is within that bound.
  const Cell home = CellOf(s);
  double best = std::numeric_limits<double>::infinity();
  const int max_ring = std::max(width_, height_) + 1;
  for (int k = 0; k <= max_ring; ++k) {
    for (int dy = -k; dy <= k; ++dy) {
      for (int dx = -k; dx <= k; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
        Cell c{home.x + dx, home.y + dy};
        if (!InBounds(c) || !walls_[Index(c)]) continue;
        best = std::min(best, PointRectDistance(s, c.x * cell_size_,
                                                c.y * cell_size_,
                                                (c.x + 1) * cell_size_,
                                                (c.y + 1) * cell_size_));
      }
    }
    if (best <= k * cell_size_) break;
  }
  return best;
}

double PointRectDistance(State p, double x0, double y0, double x1, double y1) {
  const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
  const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
  return std::hypot(dx, dy);
}

MazeSpec ParseMaze(std::string name, std::string_view text, double cell_size) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) rows.push_back(line);
  }
  return MazeSpec(std::move(name), std::move(rows), cell_size);
}

MazeSpec LoadMazeFile(const std::filesystem::path& path, double cell_size) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open maze file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseMaze(path.stem().string(), buf.str(), cell_size);
}

std::vector<std::string> BuiltinMazeNames() { return {"medium", "large", "giant"}; }

bool IsBuiltinMaze(std::string_view name) {
  return name == "medium" || name == "large" || name == "giant";
}

MazeSpec BuiltinMaze(std::string_view name, double cell_size) {
  if (name == "medium") return ParseMaze("medium", kMedium, cell_size);
  if (name == "large") return ParseMaze("large", kLarge, cell_size);
  if (name == "giant") return ParseMaze("giant", kGiant, cell_size);
  throw InvalidArgument("unknown maze: " + std::string(name));
}

MazeSpec ResolveMaze(std::string_view name_or_path, double cell_size) {
  if (IsBuiltinMaze(name_or_path)) return BuiltinMaze(name_or_path, cell_size);
  const std::filesystem::path p{std::string(name_or_path)};
  if (std::filesystem::is_regular_file(p)) return LoadMazeFile(p, cell_size);
  throw InvalidArgument("unknown maze: " + std::string(name_or_path));
}

}  // namespace eikgcrl::mazeworld
