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

#include "eikgcrl/checks/finite_difference.h"

#include <algorithm>
#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::checks {

using diffcore::Matrix;
using diffcore::ParameterSet;

double CentralDifferenceAt(const ScalarOfParams& f, const ParameterSet& params,
                           std::size_t entry, Eigen::Index row,
                           Eigen::Index col, double h) {
  ParameterSet probe = params;
  const double x0 = params.values(entry)(row, col);
  probe.mutable_values(entry)(row, col) = x0 + h;
  const double up = f(probe);
  probe.mutable_values(entry)(row, col) = x0 - h;
  const double down = f(probe);
  return (up - down) / (2.0 * h);
}

ParameterSet CentralDifferenceGrad(const ScalarOfParams& f,
                                   const ParameterSet& params, double h) {
  ParameterSet grad = params.ZerosLike();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& v = params.values(i);
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c) {
        grad.mutable_values(i)(r, c) = CentralDifferenceAt(f, params, i, r, c, h);
      }
    }
  }
  return grad;
}

Matrix CentralDifferenceGrad(const ScalarOfMatrix& f, const Matrix& x,
                             double h) {
  Matrix grad(x.rows(), x.cols());
  Matrix probe = x;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      probe(r, c) = x(r, c) + h;
      const double up = f(probe);
      probe(r, c) = x(r, c) - h;
      const double down = f(probe);
      probe(r, c) = x(r, c);
      grad(r, c) = (up - down) / (2.0 * h);
    }
  }
  return grad;
}

double RelativeError(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

double MaxRelativeError(const Matrix& a, const Matrix& b, double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("relative error: shape mismatch");
  }
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    m = std::max(m, RelativeError(a.data()[i], b.data()[i], floor));
  }
  return m;
}

double MaxRelativeError(const ParameterSet& a, const ParameterSet& b,
                        double floor) {
  if (!a.SameLayout(b)) throw InvalidArgument("relative error: layout mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, MaxRelativeError(a.values(i), b.values(i), floor));
  }
  return m;
}

}  // namespace eikgcrl::checks
