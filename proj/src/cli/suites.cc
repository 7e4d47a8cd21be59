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

#include "eikgcrl/cli/suites.h"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "eikgcrl/checks/finite_difference.h"
#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/oracle/distance_field.h"
#include "eikgcrl/rng.h"
#include "eikgcrl/valuelearn/hamiltonian.h"
#include "eikgcrl/valuelearn/losses.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::cli {

using diffcore::Activation;
using diffcore::Matrix;
using diffcore::MlpSpec;
using diffcore::ParameterSet;
using diffcore::Tape;
using diffcore::Var;

namespace {

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string Fmt(const char* label, double v) {
  std::ostringstream os;
  os << label << v;
  return os.str();
}

Matrix Uniform(Eigen::Index r, Eigen::Index c, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

// Random spec with non-trivial biases so no coordinate sits at a symmetric
// point.
ParameterSet RandomNet(const MlpSpec& spec, Rng& rng) {
  ParameterSet p = diffcore::InitParams(spec, rng());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p.mutable_values(i) += Uniform(p.values(i).rows(), p.values(i).cols(),
                                   -0.3, 0.3, rng);
  }
  return p;
}

MlpSpec RandomSpec(int input_dim, Rng& rng) {
  std::uniform_int_distribution<int> width(2, 6), depth(1, 2), act(0, 1);
  MlpSpec s;
  s.input_dim = input_dim;
  s.hidden_dims.assign(depth(rng), 0);
  for (int& h : s.hidden_dims) h = width(rng);
  s.output_dim = 1;
  s.activation = act(rng) ? Activation::kSoftplus : Activation::kTanh;
  return s;
}

}  // namespace

SuiteResult AutodiffSuite(int cases, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "autodiff";
  Rng rng(seed);
  double worst_param = 0.0, worst_input = 0.0, worst_second = 0.0;
  for (int c = 0; c < cases; ++c) {
    // Parameter gradient of a squared-error loss.
    const MlpSpec spec = RandomSpec(3, rng);
    const ParameterSet p = RandomNet(spec, rng);
    const Matrix x = Uniform(6, 3, -1.5, 1.5, rng);
    const Matrix y = Uniform(6, 1, -1.0, 1.0, rng);
    const diffcore::LossAndGrad lg = diffcore::GradParams(
        [&](Tape& tape, std::span<const Var> leaves) {
          diffcore::MlpVars vars;
          for (std::size_t l = 0; l + 1 < leaves.size(); l += 2) {
            vars.weights.push_back(leaves[l]);
            vars.biases.push_back(leaves[l + 1]);
          }
          Var out = diffcore::MlpForward(vars, spec, tape.Constant(x)).out;
          return Mean(Square(Sub(out, tape.Constant(y))));
        },
        p);
    const ParameterSet fd = checks::CentralDifferenceGrad(
        [&](const ParameterSet& q) {
          return (diffcore::Forward(q, spec, x) - y).array().square().mean();
        },
        p);
    worst_param = std::max(worst_param, checks::MaxRelativeError(lg.grad, fd));

    // Input gradient, summed over rows so each row is its own function.
    const Matrix ig = diffcore::InputGradient(p, spec, x);
    const Matrix ig_fd = checks::CentralDifferenceGrad(
        [&](const Matrix& z) { return diffcore::Forward(p, spec, z).sum(); }, x);
    worst_input = std::max(worst_input, checks::MaxRelativeError(ig, ig_fd));

    // Parameter gradient through the Eikonal penalty of a value field.
    const MlpSpec vspec = RandomSpec(4, rng);
    const valuelearn::InputNorm norm{10.0, 10.0, 0.1};
    const ParameterSet vp = RandomNet(vspec, rng);
    const valuelearn::ValueField field(vspec, norm, 3.0, vp, vp);
    valuelearn::ValueBatch b;
    b.states = Uniform(6, 2, 0.0, 20.0, rng);
    b.next_states = b.states;
    b.goals = Uniform(6, 2, 0.0, 20.0, rng);
    b.speeds = Uniform(6, 1, 0.1, 1.0, rng);
    const diffcore::LossAndGrad pen = valuelearn::EikonalPenalty(field, b);
    const ParameterSet pen_fd = checks::CentralDifferenceGrad(
        [&](const ParameterSet& q) {
          const valuelearn::ValueField f(vspec, norm, 3.0, q, q);
          const Matrix gs = f.GradState(b.states, b.goals);
          const Eigen::ArrayXd n = gs.rowwise().norm().array();
          return ((n * b.speeds.array() - 1.0).square()).mean();
        },
        vp);
    worst_second =
        std::max(worst_second, checks::MaxRelativeError(pen.grad, pen_fd));
  }
  const bool ok = worst_param < 1e-5 && worst_input < 1e-5 &&
                  worst_second < 1e-4;
  r.lines.push_back("cases per check: " + std::to_string(cases));
  r.lines.push_back(Fmt("parameter gradient max rel err (< 1e-5): ", worst_param));
  r.lines.push_back(Fmt("input gradient max rel err (< 1e-5): ", worst_input));
  r.lines.push_back(
      Fmt("Eikonal penalty parameter gradient max rel err (< 1e-4): ",
          worst_second));
  r.passed = ok && cases >= 100;
  r.seconds = timer.Seconds();
  return r;
}

SuiteResult HamiltonianSuite(int samples, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "prop1";
  Rng rng(seed);
  const valuelearn::HamiltonianReport rep =
      valuelearn::HamiltonianBoundCheck(samples, rng, 1e-9);
  r.lines.push_back("samples: " + std::to_string(rep.samples));
  r.lines.push_back("violations: " + std::to_string(rep.violations));
  r.lines.push_back(Fmt("max excess over bound: ", rep.max_excess));
  if (!rep.counterexample.empty()) {
    r.lines.push_back("counterexample: " + rep.counterexample);
  }
  for (const auto& level : rep.levels) {
    std::ostringstream os;
    os << "isotropic n=" << level.num_actions << " spacing=" << level.spacing
       << " rel error=" << level.error;
    r.lines.push_back(os.str());
  }
  r.lines.push_back(Fmt("observed order in spacing (>= 1): ", rep.observed_order));
  r.passed = rep.passed && rep.samples >= samples;
  r.seconds = timer.Seconds();
  return r;
}

SuiteResult OracleSuite() {
  Timer timer;
  SuiteResult r;
  r.name = "oracle";
  bool ok = true;
  for (const std::string& name : mazeworld::BuiltinMazeNames()) {
    const mazeworld::MazeSpec maze = mazeworld::BuiltinMaze(name);
    double worst = 0.0;
    bool scaling_exact = true;
    for (const mazeworld::Cell& goal : maze.free_cells()) {
      const oracle::DistanceField fmm =
          oracle::FastMarch(maze, goal, oracle::UnitSpeed());
      const oracle::DistanceField dij =
          oracle::DijkstraReference(maze, goal, oracle::UnitSpeed(), 4);
      worst = std::max(worst, oracle::MaxRelativeDifference(fmm, dij));
      if (goal == maze.free_cells().front()) {
        auto half = [](mazeworld::State) { return 0.5; };
        const auto slow_f = oracle::FastMarch(maze, goal, half);
        const auto slow_d = oracle::DijkstraReference(maze, goal, half, 4);
        for (std::size_t i = 0; i < fmm.times.size(); ++i) {
          if (slow_f.times[i] != 2.0 * fmm.times[i] ||
              slow_d.times[i] != 2.0 * dij.times[i]) {
            scaling_exact = false;
          }
        }
      }
    }
    ok = ok && worst < 0.03 && scaling_exact;
    std::ostringstream os;
    os << name << ": fast-march vs Dijkstra max rel diff " << worst
       << " (< 0.03) over " << maze.free_cells().size()
       << " goals; halved-speed scaling " << (scaling_exact ? "exact" : "INEXACT");
    r.lines.push_back(os.str());
  }
  r.passed = ok;
  r.seconds = timer.Seconds();
  return r;
}

}  // namespace eikgcrl::cli
