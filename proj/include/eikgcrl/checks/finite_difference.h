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

#ifndef EIKGCRL_CHECKS_FINITE_DIFFERENCE_H_
#define EIKGCRL_CHECKS_FINITE_DIFFERENCE_H_

#include <functional>

#include "eikgcrl/diffcore/parameter_set.h"

namespace eikgcrl::checks {

using ScalarOfParams = std::function<double(const diffcore::ParameterSet&)>;
using ScalarOfMatrix = std::function<double(const diffcore::Matrix&)>;

// Central difference (f(p + h e) - f(p - h e)) / 2h for one coordinate.
double CentralDifferenceAt(const ScalarOfParams& f,
                           const diffcore::ParameterSet& params,
                           std::size_t entry, Eigen::Index row,
                           Eigen::Index col, double h = 1e-4);

// Central differences for every coordinate.
diffcore::ParameterSet CentralDifferenceGrad(
    const ScalarOfParams& f, const diffcore::ParameterSet& params,
    double h = 1e-4);

diffcore::Matrix CentralDifferenceGrad(const ScalarOfMatrix& f,
                                       const diffcore::Matrix& x,
                                       double h = 1e-4);

// |a - b| / max(|a|, |b|, floor). The floor keeps coordinates whose true
// derivative is ~0 from being judged on truncation noise alone.
double RelativeError(double a, double b, double floor = 1e-3);

double MaxRelativeError(const diffcore::ParameterSet& a,
                        const diffcore::ParameterSet& b, double floor = 1e-3);
double MaxRelativeError(const diffcore::Matrix& a, const diffcore::Matrix& b,
                        double floor = 1e-3);

}  // namespace eikgcrl::checks

#endif  // EIKGCRL_CHECKS_FINITE_DIFFERENCE_H_
