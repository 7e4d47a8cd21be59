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

#ifndef EIKGCRL_VALUELEARN_HAMILTONIAN_H_
#define EIKGCRL_VALUELEARN_HAMILTONIAN_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eikgcrl/rng.h"

namespace eikgcrl::valuelearn {

// min_a [cost(a) + grad_v . dynamics(a)] over a finite action set; row a of
// `dynamics` is f(s, a).
double DiscreteHamiltonian(const Eigen::VectorXd& cost,
                           const Eigen::MatrixXd& dynamics,
                           const Eigen::VectorXd& grad_v);

// Upper bound min_a cost + ||grad_v|| * max_a ||dynamics(a)||.
double HamiltonianUpperBound(const Eigen::VectorXd& cost,
                             const Eigen::MatrixXd& dynamics,
                             const Eigen::VectorXd& grad_v);

// Hamiltonian with constant cost and n unit actions at angles
// offset + 2 pi k / n.
double IsotropicHamiltonian(double cost, const Eigen::Vector2d& grad_v, int n,
                            double offset);

struct IsotropicLevel {
  int num_actions = 0;
  double spacing = 0.0;  // angular spacing 2 pi / n
  double error = 0.0;    // (H_n - (cost - ||grad_v||)) / ||grad_v||
};

struct HamiltonianReport {
  int samples = 0;
  int violations = 0;
  double max_excess = 0.0;  // max of H - bound over all samples
  std::string counterexample;
  std::vector<IsotropicLevel> levels;  // worst case over isotropic trials
  double observed_order = 0.0;         // log-log slope of error vs spacing
  bool isotropic_ok = false;
  bool passed = false;
};

// Random finite action sets, costs, dynamics and value gradients; counts
// instances where the Hamiltonian exceeds the bound by more than
// `tolerance`. Also refines the isotropic action grid and requires the error
// to vanish at least at first order in the angular spacing.
HamiltonianReport HamiltonianBoundCheck(int n_samples, Rng& rng,
                                        double tolerance = 1e-9);

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_HAMILTONIAN_H_
