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

#ifndef EIKGCRL_ORACLE_AGREEMENT_H_
#define EIKGCRL_ORACLE_AGREEMENT_H_

#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "eikgcrl/oracle/distance_field.h"
#include "eikgcrl/valuelearn/losses.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::oracle {

using ValueFn = valuelearn::ValueQuery;

// Speed profile evaluated through the maze's obstacle distance.
SpeedFn ProfileSpeed(const valuelearn::SpeedProfile& profile,
                     const mazeworld::MazeSpec& maze);

// Spearman rank correlation with average ranks for ties. Returns NaN when
// either input is constant.
double SpearmanRho(std::span<const double> a, std::span<const double> b);

struct AgreementReport {
  bool valid = false;
  std::string message;
  int cells = 0;
  double spearman_rho = 0.0;
  // Mean |V(a) - V(b)| over free cells two apart in a row or column with a
  // wall cell between them, minus the same mean over pairs with a free cell
  // between them.
  double wall_contrast = 0.0;
  double wall_gap = 0.0;
  double open_gap = 0.0;
};

// Compares -V(center, goal center) with the field's travel times over every
// reachable free cell center.
AgreementReport FieldValueAgreement(const ValueFn& value,
                                    const DistanceField& field);

}  // namespace eikgcrl::oracle

#endif  // EIKGCRL_ORACLE_AGREEMENT_H_
