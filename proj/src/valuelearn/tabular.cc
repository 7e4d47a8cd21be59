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

#include "eikgcrl/valuelearn/tabular.h"

#include <algorithm>
#include <cmath>

#include "eikgcrl/errors.h"

namespace eikgcrl::valuelearn {

double Expectile(std::span<const double> samples, double iota) {
  if (samples.empty()) throw InvalidArgument("expectile of an empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const int n = static_cast<int>(x.size());
  // With k samples strictly below v the first-order condition is linear in v.
  double sum_lo = 0.0;
  double sum_hi = 0.0;
  for (double v : x) sum_hi += v;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      sum_lo += x[k - 1];
      sum_hi -= x[k - 1];
    }
    const double w_lo = (1.0 - iota) * k;
    const double w_hi = iota * (n - k);
    const double v = ((1.0 - iota) * sum_lo + iota * sum_hi) / (w_lo + w_hi);
    const double lo = k == 0 ? -INFINITY : x[k - 1];
    const double hi = k == n ? INFINITY : x[k];
    if (v > lo && v <= hi) return v;
    if (k > 0 && v == lo) return v;
  }
  return x.back();
}

std::vector<double> TabularExpectileValues(
    int num_states, std::span<const TabularTransition> transitions,
    double gamma, double iota, double tol, int max_iters) {
  if (num_states < 1) throw InvalidArgument("need at least one state");
  std::vector<std::vector<const TabularTransition*>> out(num_states);
  for (const TabularTransition& t : transitions) {
    if (t.state < 0 || t.state >= num_states || t.next_state < 0 ||
        t.next_state >= num_states) {
      throw InvalidArgument("tabular transition out of range");
    }
    out[t.state].push_back(&t);
  }
  std::vector<double> v(num_states, 0.0);
  std::vector<double> targets;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> next(num_states, 0.0);
    double change = 0.0;
    for (int s = 0; s < num_states; ++s) {
      if (out[s].empty()) continue;
      targets.clear();
      for (const TabularTransition* t : out[s]) {
        targets.push_back(t->reward +
                          (t->done ? 0.0 : gamma * v[t->next_state]));
      }
      next[s] = Expectile(targets, iota);
      change = std::max(change, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    if (change < tol) return v;
  }
  throw NumericalError("tabular expectile iteration did not converge");
}

double DiscountedPathValue(int n, double gamma) {
  if (n < 0) throw InvalidArgument("path length must be >= 0");
  if (gamma == 1.0) return -static_cast<double>(n);
  return -(1.0 - std::pow(gamma, n)) / (1.0 - gamma);
}

}  // namespace eikgcrl::valuelearn
