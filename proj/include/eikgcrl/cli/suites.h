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

#ifndef EIKGCRL_CLI_SUITES_H_
#define EIKGCRL_CLI_SUITES_H_

#include <cstdint>
#include <string>
#include <vector>

namespace eikgcrl::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;  // one finding per line
  double seconds = 0.0;
};

// Central differences against reverse mode on random tiny networks:
// parameter gradients and input gradients (max rel err < 1e-5) and the
// parameter gradient through the Eikonal penalty (< 1e-4), `cases` each.
SuiteResult AutodiffSuite(int cases = 100, std::uint64_t seed = 0);

// Hamiltonian bound fuzz with `samples` instances at tolerance 1e-9 plus
// the isotropic refinement study.
SuiteResult HamiltonianSuite(int samples = 100000, std::uint64_t seed = 0);

// Fast marching vs subdivided Dijkstra (subdivision 4) on every free goal
// cell of every built-in maze, max relative difference < 3%, and exact
// travel-time scaling under halved uniform speed.
SuiteResult OracleSuite();

}  // namespace eikgcrl::cli

#endif  // EIKGCRL_CLI_SUITES_H_
