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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "eikgcrl/errors.h"
#include "eikgcrl/oracle/agreement.h"
#include "eikgcrl/oracle/distance_field.h"
#include "eikgcrl/valuelearn/tabular.h"
#include "exact_geodesic.h"

namespace eikgcrl::oracle {
namespace {

using mazeworld::BuiltinMaze;
using mazeworld::Cell;
using mazeworld::MazeSpec;
using mazeworld::ParseMaze;

SpeedFn ConstantSpeed(double s) {
  return [s](mazeworld::State) { return s; };
}

TEST(FastMarchTest, OneDimensionalCorridorIsExact) {
  const double h = 3.0;
  MazeSpec m = ParseMaze("c", "#####\n#...#\n#####\n", h);
  DistanceField f = FastMarch(m, {3, 1}, UnitSpeed(), 1);
  EXPECT_EQ(f.At({1, 1}), 2 * h);
  EXPECT_EQ(f.At({2, 1}), h);
  EXPECT_EQ(f.At({3, 1}), 0.0);
  EXPECT_TRUE(std::isinf(f.At({0, 0})));
  DistanceField fine = FastMarch(m, {3, 1}, UnitSpeed(), 41);
  EXPECT_NEAR(fine.At({1, 1}), 2 * h, 1e-9);
  EXPECT_NEAR(fine.At({2, 1}), h, 1e-9);
}

TEST(FastMarchTest, OpenRegionIsNearEuclidean) {
  std::string text(23, '#');
  text += "\n";
  for (int r = 0; r < 21; ++r) text += "#" + std::string(21, '.') + "#\n";
  text += std::string(23, '#') + "\n";
  MazeSpec m = ParseMaze("open", text, 1.0);
  const Cell goal{11, 11};
  DistanceField f = FastMarch(m, goal, UnitSpeed());
  for (const Cell& c : m.free_cells()) {
    if (c == goal) continue;
    if (c.x < 3 || c.y < 3 || c.x > 19 || c.y > 19) continue;
    const double e = std::hypot(c.x - goal.x, c.y - goal.y);
    EXPECT_LT(std::abs(f.At(c) - e) / e, 0.02) << c.x << "," << c.y;
  }
}

TEST(FastMarchTest, HalvedSpeedDoublesTimesExactly) {
  MazeSpec m = BuiltinMaze("medium");
  const Cell goal = m.free_cells()[3];
  DistanceField a = FastMarch(m, goal, ConstantSpeed(0.8), 11);
  DistanceField b = FastMarch(m, goal, ConstantSpeed(0.4), 11);
  DistanceField c = DijkstraReference(m, goal, ConstantSpeed(0.8));
  DistanceField d = DijkstraReference(m, goal, ConstantSpeed(0.4));
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    EXPECT_EQ(b.times[i], 2.0 * a.times[i]);
    EXPECT_EQ(d.times[i], 2.0 * c.times[i]);
  }
}

TEST(FastMarchTest, RejectsBadArguments) {
  MazeSpec m = BuiltinMaze("medium");
  EXPECT_THROW(FastMarch(m, {0, 0}, UnitSpeed()), InvalidArgument);
  EXPECT_THROW(FastMarch(m, {1, 1}, UnitSpeed(), 4), InvalidArgument);
  EXPECT_THROW(DijkstraReference(m, {1, 1}, UnitSpeed(), 3), InvalidArgument);
  EXPECT_THROW(FastMarch(m, {1, 1}, ConstantSpeed(0.0)), InvalidArgument);
}

TEST(DijkstraTest, StraightCorridorIsExact) {
  MazeSpec m = ParseMaze("c", "#######\n#.....#\n#######\n", 4.0);
  DistanceField f = DijkstraReference(m, {1, 1}, UnitSpeed());
  for (int x = 1; x <= 5; ++x) EXPECT_EQ(f.At({x, 1}), 4.0 * (x - 1));
}

TEST(SolversTest, UnreachablePocketIsInfiniteInBoth) {
  MazeSpec m = ParseMaze("pocket", "######\n#..#.#\n######\n", 4.0);
  DistanceField a = FastMarch(m, {1, 1}, UnitSpeed());
  DistanceField b = DijkstraReference(m, {1, 1}, UnitSpeed());
  EXPECT_TRUE(std::isinf(a.At({4, 1})));
  EXPECT_TRUE(std::isinf(b.At({4, 1})));
  EXPECT_TRUE(std::isfinite(a.At({2, 1})));
  EXPECT_NEAR(MaxRelativeDifference(a, b), 0.0, 1e-12);
}

TEST(SolversTest, DiagonalPinchIsClosed) {
  MazeSpec m = ParseMaze("pinch", "####\n#.##\n##.#\n#..#\n####\n", 4.0);
  EXPECT_TRUE(std::isinf(DijkstraReference(m, {1, 1}, UnitSpeed()).At({2, 2})));
  EXPECT_TRUE(std::isinf(FastMarch(m, {1, 1}, UnitSpeed()).At({2, 2})));
}

// Both solvers against exact shortest paths around the wall squares.
TEST(SolversTest, ConvergeTowardExactGeodesics) {
  for (const std::string& name : mazeworld::BuiltinMazeNames()) {
    MazeSpec m = BuiltinMaze(name);
    testing_oracle::ExactGeodesic exact(m);
    std::vector<mazeworld::State> centers;
    for (const Cell& c : m.free_cells()) centers.push_back(m.CenterOf(c));
    double fmm_err = 0.0, dij_err = 0.0;
    for (std::size_t gi = 0; gi < m.free_cells().size(); gi += 3) {
      const Cell goal = m.free_cells()[gi];
      const auto e = exact.From(m.CenterOf(goal), centers);
      DistanceField a = FastMarch(m, goal, UnitSpeed());
      DistanceField b = DijkstraReference(m, goal, UnitSpeed());
      for (std::size_t i = 0; i < centers.size(); ++i) {
        if (e[i] == 0.0) continue;
        const Cell c = m.free_cells()[i];
        fmm_err = std::max(fmm_err, std::abs(a.At(c) - e[i]) / e[i]);
        dij_err = std::max(dij_err, std::abs(b.At(c) - e[i]) / e[i]);
        // 8-neighbor paths never undercut the true geodesic.
        EXPECT_GE(b.At(c), e[i] * (1 - 1e-12));
      }
    }
    EXPECT_LT(fmm_err, 0.03) << name;
    // Worst-case 8-neighbor metrication: cos(22.5) + (sqrt2 - 1) sin(22.5).
    EXPECT_LT(dij_err, 0.0824) << name;
  }
}

TEST(DistanceFieldTest, GoalIsZeroAndDescentExists) {
  MazeSpec m = BuiltinMaze("large");
  for (const Cell goal : {m.free_cells().front(), m.free_cells().back()}) {
    DistanceField f = FastMarch(m, goal, UnitSpeed(), 11);
    EXPECT_EQ(f.At(goal), 0.0);
    for (const Cell& c : m.free_cells()) {
      ASSERT_GE(f.At(c), 0.0);
      if (c == goal) continue;
      double best = kInf;
      for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
        const Cell n{c.x + d.x, c.y + d.y};
        if (m.IsFree(n)) best = std::min(best, f.At(n));
      }
      EXPECT_LT(best, f.At(c));
    }
  }
}

TEST(DistanceFieldTest, CsvExportIsDeterministic) {
  MazeSpec m = BuiltinMaze("medium");
  DistanceField a = FastMarch(m, {1, 1}, UnitSpeed(), 11);
  DistanceField b = FastMarch(m, {1, 1}, UnitSpeed(), 11);
  const std::string csv = DistanceFieldCsv(a);
  EXPECT_EQ(csv, DistanceFieldCsv(b));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'),
            static_cast<long>(m.free_cells().size()) + 1);
  const auto dir = std::filesystem::temp_directory_path() / "eikgcrl_df";
  std::filesystem::remove_all(dir);
  WriteDistanceField(a, dir);
  std::ifstream in(dir / "distance_field.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), csv);
  EXPECT_TRUE(std::filesystem::exists(dir / "distance_field.json"));
}

TEST(AgreementTest, SpearmanKnownValues) {
  std::vector<double> a = {1, 2, 3, 4}, b = {1, 3, 2, 4};
  EXPECT_NEAR(SpearmanRho(a, b), 0.8, 1e-12);
  std::vector<double> c = {4, 3, 2, 1};
  EXPECT_NEAR(SpearmanRho(a, c), -1.0, 1e-12);
  std::vector<double> flat = {2, 2, 2, 2};
  EXPECT_TRUE(std::isnan(SpearmanRho(a, flat)));
}

TEST(AgreementTest, NegatedTravelTimeIsPerfect) {
  MazeSpec m = BuiltinMaze("medium");
  double exact_contrast = 0.0, euclid_contrast = 0.0;
  for (const Cell& goal : m.free_cells()) {
    DistanceField f = FastMarch(m, goal, UnitSpeed(), 5);
    ValueFn exact = [&](const Eigen::MatrixXd& s, const Eigen::MatrixXd&) {
      Eigen::VectorXd v(s.rows());
      for (Eigen::Index i = 0; i < s.rows(); ++i) {
        v(i) = -f.At(m.CellOf({s(i, 0), s(i, 1)}));
      }
      return v;
    };
    AgreementReport r = FieldValueAgreement(exact, f);
    ASSERT_TRUE(r.valid) << r.message;
    EXPECT_NEAR(r.spearman_rho, 1.0, 1e-12);
    exact_contrast += r.wall_contrast;
    // Straight-line distance ignores walls.
    ValueFn euclid = [](const Eigen::MatrixXd& s, const Eigen::MatrixXd& g) {
      return Eigen::VectorXd(-(s - g).rowwise().norm());
    };
    euclid_contrast += FieldValueAgreement(euclid, f).wall_contrast;
  }
  // Single goals can go negative; the average over goals should not.
  EXPECT_GT(exact_contrast, 0.0);
  EXPECT_LT(euclid_contrast, exact_contrast);
}

TEST(AgreementTest, ConstantValueIsReportedAsFailure) {
  MazeSpec m = BuiltinMaze("medium");
  DistanceField f = FastMarch(m, {5, 5}, UnitSpeed(), 11);
  ValueFn flat = [](const Eigen::MatrixXd& s, const Eigen::MatrixXd&) {
    return Eigen::VectorXd(Eigen::VectorXd::Constant(s.rows(), -3.0));
  };
  AgreementReport r = FieldValueAgreement(flat, f);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.message.empty());
}

TEST(DiscountTest, PathValueMatchesGeometricSum) {
  EXPECT_NEAR(valuelearn::DiscountedPathValue(10, 0.99), -9.56179249911955,
              1e-12);
}

}  // namespace
}  // namespace eikgcrl::oracle
