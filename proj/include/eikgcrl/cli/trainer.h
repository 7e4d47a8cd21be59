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

#ifndef EIKGCRL_CLI_TRAINER_H_
#define EIKGCRL_CLI_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "eikgcrl/diffcore/parameter_set.h"
#include "eikgcrl/evalkit/evaluate.h"
#include "eikgcrl/mazeworld/dataset.h"
#include "eikgcrl/policyextract/actor.h"
#include "eikgcrl/policyextract/q_field.h"
#include "eikgcrl/valuelearn/config.h"
#include "eikgcrl/valuelearn/value_field.h"

namespace eikgcrl::cli {

enum class Algo {
  kHiql,
  kEikHiql,
  kHjbHiql,
  kGcivl,
  kEikGcivl,
  kGciql,
  kEikGciql,
};

const char* AlgoName(Algo algo);
// Throws InvalidArgument for unknown names.
Algo ParseAlgo(std::string_view name);
std::vector<Algo> AllAlgos();

struct AlgoTraits {
  bool hierarchical = false;
  bool uses_q = false;
  valuelearn::Regularizer regularizer = valuelearn::Regularizer::kNone;
};
AlgoTraits TraitsOf(Algo algo);

// `config` with the algorithm's regularizer; everything else untouched.
valuelearn::TrainConfig ConfigForAlgo(valuelearn::TrainConfig config,
                                      Algo algo);

// Step budget per phase. Hierarchical: value / high / low = 50 / 25 / 25
// percent (remainder to low). Flat: every step updates all networks.
struct PhasePlan {
  std::int64_t value_steps = 0;
  std::int64_t high_steps = 0;
  std::int64_t low_steps = 0;
  std::int64_t flat_steps = 0;
};
PhasePlan PlanPhases(Algo algo, std::int64_t steps);

struct TrainOptions {
  Algo algo = Algo::kEikHiql;
  std::int64_t steps = 20000;
  // Hierarchical only: stop once the value phase is done.
  bool value_only = false;
  // Periodic evaluation every config.eval_interval steps (0 disables).
  bool evaluate = true;
  int eval_threads = 0;
  // Writes metrics.csv and evals.json here when non-empty.
  std::filesystem::path metrics_dir;
  // Progress lines on stderr.
  bool verbose = false;
};

struct EvalRecord {
  std::int64_t step = 0;
  evalkit::EvalReport report;
};

struct TrainResult {
  valuelearn::ValueField value;
  std::optional<policyextract::QField> q;
  std::optional<policyextract::Actor> actor;
  std::int64_t steps_done = 0;
  std::vector<EvalRecord> evals;
  // Checkpoint of the best evaluated state (earliest on ties); equals the
  // final checkpoint when nothing was evaluated.
  diffcore::ParameterSet best_checkpoint;
  std::int64_t best_step = 0;
  double best_success = -1.0;
};

// Deterministic in (dataset, config, options). Throws NumericalError on a
// non-finite loss or gradient.
TrainResult Train(const mazeworld::Dataset& data,
                  const valuelearn::TrainConfig& config,
                  const TrainOptions& options);

// value/, q/ (GCIQL), hi/ + lo/ or flat/, meta/subgoal_steps, meta/algo.
diffcore::ParameterSet MakeCheckpoint(Algo algo,
                                      const valuelearn::ValueField& value,
                                      const policyextract::QField* q,
                                      const policyextract::Actor* actor);
// Throws CorruptArtifact when meta/algo is missing or unknown.
Algo CheckpointAlgo(const diffcore::ParameterSet& checkpoint);

}  // namespace eikgcrl::cli

#endif  // EIKGCRL_CLI_TRAINER_H_
