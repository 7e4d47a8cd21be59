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

#ifndef EIKGCRL_POLICYEXTRACT_ACTOR_H_
#define EIKGCRL_POLICYEXTRACT_ACTOR_H_

#include <optional>

#include "eikgcrl/mazeworld/dynamics.h"
#include "eikgcrl/policyextract/gaussian_policy.h"

namespace eikgcrl::policyextract {

// Hierarchical when `high` is set: the high policy proposes a subgoal from
// (s, g) and the low policy acts on (s, subgoal). Flat otherwise: `low`
// acts on (s, g) directly.
struct Actor {
  std::optional<GaussianPolicy> high;
  GaussianPolicy low;
  int subgoal_steps = 10;

  bool hierarchical() const { return high.has_value(); }
};

Actor MakeHierarchicalActor(GaussianPolicy high, GaussianPolicy low,
                            int subgoal_steps);
Actor MakeFlatActor(GaussianPolicy policy);

// Subgoals (hierarchical) or the goals themselves (flat); batch x 2.
Matrix Subgoals(const Actor& actor, const Matrix& states, const Matrix& goals,
                bool deterministic, Rng& rng);
// Clipped actions, batch x 2. Deterministic mode uses means throughout and
// does not touch `rng`.
Matrix Act(const Actor& actor, const Matrix& states, const Matrix& goals,
           bool deterministic, Rng& rng);
mazeworld::Action Act(const Actor& actor, mazeworld::State s,
                      mazeworld::State g, bool deterministic, Rng& rng);

// `hi/` + `lo/` or `flat/` entries plus `meta/subgoal_steps`.
diffcore::ParameterSet ActorToParams(const Actor& actor);
// Throws CorruptArtifact when neither layout is present.
Actor ActorFromParams(const diffcore::ParameterSet& params);

}  // namespace eikgcrl::policyextract

#endif  // EIKGCRL_POLICYEXTRACT_ACTOR_H_
