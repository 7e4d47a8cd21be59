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

#ifndef EIKGCRL_RNG_H_
#define EIKGCRL_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace eikgcrl {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and stream labels
// (SplitMix64 finalizer applied per label).
inline std::uint64_t DeriveSeed(std::uint64_t base,
                                std::initializer_list<std::uint64_t> labels) {
  std::uint64_t z = base;
  for (std::uint64_t label : labels) {
    z += 0x9e3779b97f4a7c15ULL + label;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

}  // namespace eikgcrl

#endif  // EIKGCRL_RNG_H_
