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

#include "eikgcrl/oracle/distance_field.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eikgcrl/errors.h"
#include "eikgcrl/mazeworld/dataset.h"

namespace eikgcrl::oracle {

double MaxRelativeDifference(const DistanceField& a, const DistanceField& b) {
  if (a.times.size() != b.times.size()) {
    throw InvalidArgument("distance fields cover different mazes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const double x = a.times[i];
    const double y = b.times[i];
    if (std::isinf(x) || std::isinf(y)) {
      if (std::isinf(x) != std::isinf(y)) return kInf;
      continue;
    }
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(x - y) / scale);
  }
  return worst;
}

std::string DistanceFieldCsv(const DistanceField& field) {
  std::ostringstream os;
  os << "cx,cy,time\n";
  for (int y = 0; y < field.maze.height(); ++y) {
    for (int x = 0; x < field.maze.width(); ++x) {
      if (field.maze.IsWall({x, y})) continue;
      const double t = field.At({x, y});
      os << x << ',' << y << ','
         << (std::isinf(t) ? std::string("inf") : mazeworld::FormatDouble(t))
         << '\n';
    }
  }
  return os.str();
}

void WriteDistanceField(const DistanceField& field,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "distance_field.csv", std::ios::binary);
    if (!out) throw InvalidArgument("cannot write into " + dir.string());
    out << DistanceFieldCsv(field);
  }
  nlohmann::json manifest = {
      {"format", 1},
      {"maze", field.maze.name()},
      {"maze_rows", field.maze.Rows()},
      {"cell_size", field.maze.cell_size()},
      {"goal_cell", {field.goal_cell.x, field.goal_cell.y}},
      {"speed_profile", field.speed_profile},
      {"solver", field.solver},
      {"resolution", field.resolution},
      {"version", 1},
  };
  std::ofstream out(dir / "distance_field.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

}  // namespace eikgcrl::oracle
