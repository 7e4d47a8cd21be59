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

#include "eikgcrl/valuelearn/hamiltonian.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eikgcrl/errors.h"

namespace eikgcrl::valuelearn {

namespace {

void CheckShapes(const Eigen::VectorXd& cost, const Eigen::MatrixXd& dynamics,
                 const Eigen::VectorXd& grad_v) {
  if (cost.size() < 1 || dynamics.rows() != cost.size() ||
      dynamics.cols() != grad_v.size()) {
    throw InvalidArgument("Hamiltonian: inconsistent action set shapes");
  }
}

}  // namespace

double DiscreteHamiltonian(const Eigen::VectorXd& cost,
                           const Eigen::MatrixXd& dynamics,
                           const Eigen::VectorXd& grad_v) {
  CheckShapes(cost, dynamics, grad_v);
  return (cost + dynamics * grad_v).minCoeff();
}

double HamiltonianUpperBound(const Eigen::VectorXd& cost,
                             const Eigen::MatrixXd& dynamics,
                             const Eigen::VectorXd& grad_v) {
  CheckShapes(cost, dynamics, grad_v);
  return cost.minCoeff() + grad_v.norm() * dynamics.rowwise().norm().maxCoeff();
}

double IsotropicHamiltonian(double cost, const Eigen::Vector2d& grad_v, int n,
                            double offset) {
  if (n < 1) throw InvalidArgument("need at least one action");
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double th = offset + 2.0 * std::numbers::pi * k / n;
    best = std::min(best, grad_v.x() * std::cos(th) + grad_v.y() * std::sin(th));
  }
  return cost + best;
}

HamiltonianReport HamiltonianBoundCheck(int n_samples, Rng& rng,
                                        double tolerance) {
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  std::uniform_int_distribution<int> n_actions(1, 16);
  std::uniform_int_distribution<int> n_dims(1, 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  HamiltonianReport rep;
  rep.samples = n_samples;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const int m = n_actions(rng);
    const int d = n_dims(rng);
    const double cost_scale = std::pow(10.0, 2.0 * u(rng));
    const double f_scale = std::pow(10.0, 2.0 * u(rng));
    const double g_scale = std::pow(10.0, 2.0 * u(rng));
    Eigen::VectorXd cost(m);
    Eigen::MatrixXd f(m, d);
    Eigen::VectorXd g(d);
    for (int a = 0; a < m; ++a) cost(a) = cost_scale * u(rng);
    for (int a = 0; a < m; ++a) {
      for (int j = 0; j < d; ++j) f(a, j) = f_scale * normal(rng);
    }
    for (int j = 0; j < d; ++j) g(j) = g_scale * normal(rng);
    // Every tenth instance has no drift at all.
    if (i % 10 == 0) f.setZero();
    const double h = DiscreteHamiltonian(cost, f, g);
    const double bound = HamiltonianUpperBound(cost, f, g);
    const double excess = h - bound;
    rep.max_excess = std::max(rep.max_excess, excess);
    if (excess > tolerance * std::max(1.0, std::abs(bound))) {
      if (rep.violations == 0) {
        std::ostringstream os;
        os.precision(17);
        os << "sample " << i << ": H=" << h << " bound=" << bound;
        rep.counterexample = os.str();
      }
      ++rep.violations;
    }
  }

  // Isotropic refinement: worst error over random gradients and grid offsets.
  const int trials = 64;
  std::vector<Eigen::Vector2d> grads(trials);
  std::vector<double> offsets(trials);
  std::vector<double> costs(trials);
  for (int t = 0; t < trials; ++t) {
    grads[t] = {3.0 * normal(rng), 3.0 * normal(rng)};
    offsets[t] = std::numbers::pi * u(rng);
    costs[t] = u(rng);
  }
  rep.isotropic_ok = true;
  for (int n = 8; n <= 4096; n *= 2) {
    IsotropicLevel level;
    level.num_actions = n;
    level.spacing = 2.0 * std::numbers::pi / n;
    for (int t = 0; t < trials; ++t) {
      const double exact = costs[t] - grads[t].norm();
      const double err =
          IsotropicHamiltonian(costs[t], grads[t], n, offsets[t]) - exact;
      // The discrete minimum can never undercut the continuous one.
      if (err < -1e-12 * (1.0 + grads[t].norm())) rep.isotropic_ok = false;
      // First-order bound: error <= ||grad_v|| * spacing.
      if (err > grads[t].norm() * level.spacing + 1e-12) {
        rep.isotropic_ok = false;
      }
      level.error = std::max(level.error, err / std::max(grads[t].norm(), 1e-300));
    }
    rep.levels.push_back(level);
  }
  const IsotropicLevel& a = rep.levels.front();
  const IsotropicLevel& b = rep.levels.back();
  rep.observed_order =
      std::log(a.error / b.error) / std::log(a.spacing / b.spacing);
  if (!(rep.observed_order >= 1.0) || !(b.error < 1e-5)) {
    rep.isotropic_ok = false;
  }
  rep.passed = rep.violations == 0 && rep.isotropic_ok;
  return rep;
}

}  // namespace eikgcrl::valuelearn
