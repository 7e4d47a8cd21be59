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

#include "eikgcrl/policyextract/actor.h"

#include "eikgcrl/errors.h"

namespace eikgcrl::policyextract {

using diffcore::ParameterSet;

Actor MakeHierarchicalActor(GaussianPolicy high, GaussianPolicy low,
                            int subgoal_steps) {
  if (subgoal_steps < 1) throw InvalidArgument("subgoal_steps must be >= 1");
  return {std::move(high), std::move(low), subgoal_steps};
}

Actor MakeFlatActor(GaussianPolicy policy) {
  return {std::nullopt, std::move(policy), 1};
}

Matrix Subgoals(const Actor& actor, const Matrix& states, const Matrix& goals,
                bool deterministic, Rng& rng) {
  if (!actor.hierarchical()) return goals;
  return PolicyOutputs(*actor.high, states, goals, deterministic, rng);
}

Matrix Act(const Actor& actor, const Matrix& states, const Matrix& goals,
           bool deterministic, Rng& rng) {
  const Matrix sub = Subgoals(actor, states, goals, deterministic, rng);
  return PolicyOutputs(actor.low, states, sub, deterministic, rng);
}

mazeworld::Action Act(const Actor& actor, mazeworld::State s,
                      mazeworld::State g, bool deterministic, Rng& rng) {
  Matrix sm(1, 2), gm(1, 2);
  sm << s.x, s.y;
  gm << g.x, g.y;
  const Matrix a = Act(actor, sm, gm, deterministic, rng);
  return {a(0, 0), a(0, 1)};
}

ParameterSet ActorToParams(const Actor& actor) {
  ParameterSet out;
  if (actor.hierarchical()) {
    out.Merge(PolicyToParams(*actor.high, "hi/"), "");
    out.Merge(PolicyToParams(actor.low, "lo/"), "");
  } else {
    out.Merge(PolicyToParams(actor.low, "flat/"), "");
  }
  out.Add("meta/subgoal_steps", {1},
          Matrix::Constant(1, 1, static_cast<double>(actor.subgoal_steps)));
  return out;
}

Actor ActorFromParams(const ParameterSet& params) {
  if (!params.Contains("meta/subgoal_steps")) {
    throw CorruptArtifact("checkpoint lacks meta/subgoal_steps");
  }
  const double k = params.values("meta/subgoal_steps")(0, 0);
  if (!(k >= 1.0) || k != static_cast<int>(k)) {
    throw CorruptArtifact("bad subgoal_steps in checkpoint");
  }
  if (params.Contains("hi/meta")) {
    return MakeHierarchicalActor(PolicyFromParams(params, "hi/"),
                                 PolicyFromParams(params, "lo/"),
                                 static_cast<int>(k));
  }
  if (params.Contains("flat/meta")) {
    return MakeFlatActor(PolicyFromParams(params, "flat/"));
  }
  throw CorruptArtifact("checkpoint holds no actor");
}

}  // namespace eikgcrl::policyextract
