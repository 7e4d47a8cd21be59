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

#include "eikgcrl/cli/trainer.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "eikgcrl/diffcore/adam.h"
#include "eikgcrl/errors.h"
#include "eikgcrl/policyextract/awr.h"
#include "eikgcrl/rng.h"
#include "eikgcrl/valuelearn/losses.h"
#include "eikgcrl/valuelearn/metrics.h"

namespace eikgcrl::cli {

using diffcore::AdamState;
using diffcore::ParameterSet;
using policyextract::Actor;
using policyextract::GaussianPolicy;
using policyextract::QField;
using valuelearn::Regularizer;
using valuelearn::TrainConfig;
using valuelearn::ValueField;

namespace {

struct AlgoEntry {
  Algo algo;
  const char* name;
  AlgoTraits traits;
};

constexpr AlgoEntry kAlgos[] = {
    {Algo::kHiql, "hiql", {true, false, Regularizer::kNone}},
    {Algo::kEikHiql, "eik-hiql", {true, false, Regularizer::kEikonal}},
    {Algo::kHjbHiql, "hjb-hiql", {true, false, Regularizer::kHjb}},
    {Algo::kGcivl, "gcivl", {false, false, Regularizer::kNone}},
    {Algo::kEikGcivl, "eik-gcivl", {false, false, Regularizer::kEikonal}},
    {Algo::kGciql, "gciql", {false, true, Regularizer::kNone}},
    {Algo::kEikGciql, "eik-gciql", {false, true, Regularizer::kEikonal}},
};

const AlgoEntry& EntryOf(Algo algo) {
  for (const AlgoEntry& e : kAlgos) {
    if (e.algo == algo) return e;
  }
  throw InvalidArgument("unknown algorithm");
}

// DeriveSeed stream labels.
enum Stream : std::uint64_t {
  kValueInit = 10,
  kHighInit,
  kLowInit,
  kFlatInit,
  kQInit,
  kSampling = 20,
  kEvalSeed,
};

}  // namespace

const char* AlgoName(Algo algo) { return EntryOf(algo).name; }

Algo ParseAlgo(std::string_view name) {
  for (const AlgoEntry& e : kAlgos) {
    if (name == e.name) return e.algo;
  }
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algo> AllAlgos() {
  std::vector<Algo> out;
  for (const AlgoEntry& e : kAlgos) out.push_back(e.algo);
  return out;
}

AlgoTraits TraitsOf(Algo algo) { return EntryOf(algo).traits; }

TrainConfig ConfigForAlgo(TrainConfig config, Algo algo) {
  config.regularizer = TraitsOf(algo).regularizer;
  return config;
}

PhasePlan PlanPhases(Algo algo, std::int64_t steps) {
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  PhasePlan p;
  if (TraitsOf(algo).hierarchical) {
    p.value_steps = steps / 2;
    p.high_steps = steps / 4;
    p.low_steps = steps - p.value_steps - p.high_steps;
  } else {
    p.flat_steps = steps;
  }
  return p;
}

ParameterSet MakeCheckpoint(Algo algo, const ValueField& value, const QField* q,
                            const Actor* actor) {
  ParameterSet out = valuelearn::ValueFieldToParams(value, "value/");
  if (q) out.Merge(policyextract::QFieldToParams(*q, "q/"), "");
  if (actor) out.Merge(policyextract::ActorToParams(*actor), "");
  out.Add("meta/algo", {1},
          diffcore::Matrix::Constant(1, 1, static_cast<double>(algo)));
  return out;
}

Algo CheckpointAlgo(const ParameterSet& checkpoint) {
  if (!checkpoint.Contains("meta/algo")) {
    throw CorruptArtifact("checkpoint lacks meta/algo");
  }
  const double code = checkpoint.values("meta/algo")(0, 0);
  for (const AlgoEntry& e : kAlgos) {
    if (code == static_cast<double>(e.algo)) return e.algo;
  }
  throw CorruptArtifact("unknown algorithm code in checkpoint");
}

namespace {

const std::vector<std::string> kMetricColumns = {
    "td_loss", "penalty", "mean_grad_norm", "mean_value",
    "q_loss",  "policy_loss", "mean_weight"};

struct Row {
  double td_loss = 0, penalty = 0, grad_norm = 0, mean_value = 0;
  double q_loss = 0, policy_loss = 0, mean_weight = 0;

  std::vector<double> Values() const {
    return {td_loss, penalty, grad_norm, mean_value, q_loss, policy_loss,
            mean_weight};
  }
};

void CheckFinite(const Row& r, std::int64_t step) {
  for (double v : r.Values()) {
    if (!std::isfinite(v)) {
      throw NumericalError("non-finite training metric at step " +
                           std::to_string(step));
    }
  }
}

// Adam state and parameters of one policy.
struct PolicyTrainer {
  GaussianPolicy* policy;
  ParameterSet params;
  AdamState adam;

  explicit PolicyTrainer(GaussianPolicy* p)
      : policy(p),
        params(policyextract::PolicyParams(*p)),
        adam(AdamState::For(params)) {}

  void Step(const policyextract::AwrLoss& loss, double lr) {
    diffcore::AdamStep(params, loss.grad, adam, lr);
    policyextract::SetPolicyParams(*policy, params);
  }
};

class Run {
 public:
  Run(const mazeworld::Dataset& data, const TrainConfig& config,
      const TrainOptions& opts)
      : data_(data),
        config_(ConfigForAlgo(config, opts.algo)),
        opts_(opts),
        traits_(TraitsOf(opts.algo)),
        plan_(PlanPhases(opts.algo, opts.steps)),
        env_(mazeworld::DefaultEnvParams(data.maze())),
        speed_(valuelearn::SpeedProfile::For(config_, data.maze())),
        rng_(DeriveSeed(config_.seed, {kSampling})),
        value_(valuelearn::ValueSpec(config_.hidden_dims, config_.activation),
               valuelearn::InputNorm::ForMaze(data.maze()),
               config_.value_scale, DeriveSeed(config_.seed, {kValueInit})),
        value_adam_(AdamState::For(value_.online())) {
    valuelearn::ValidateConfig(config_);
    const auto& maze = data.maze();
    const auto& h = config_.hidden_dims;
    const auto act = config_.activation;
    if (traits_.hierarchical) {
      actor_ = policyextract::MakeHierarchicalActor(
          policyextract::MakeSubgoalPolicy(h, act, maze,
                                           DeriveSeed(config_.seed, {kHighInit})),
          policyextract::MakeActionPolicy(h, act, maze, env_.max_action,
                                          DeriveSeed(config_.seed, {kLowInit})),
          config_.subgoal_steps);
    } else {
      actor_ = policyextract::MakeFlatActor(policyextract::MakeActionPolicy(
          h, act, maze, env_.max_action, DeriveSeed(config_.seed, {kFlatInit})));
    }
    if (traits_.uses_q) {
      q_.emplace(policyextract::QSpec(h, act), value_.norm(), env_.max_action,
                 config_.value_scale, DeriveSeed(config_.seed, {kQInit}));
      q_adam_ = AdamState::For(q_->online());
    }
    if (!opts_.metrics_dir.empty()) {
      metrics_ = std::make_unique<valuelearn::MetricsWriter>(
          opts_.metrics_dir / "metrics.csv", kMetricColumns);
    }
  }

  TrainResult Go() {
    std::int64_t step = 0;
    const std::int64_t total =
        opts_.value_only && traits_.hierarchical ? plan_.value_steps
                                                 : opts_.steps;
    if (traits_.hierarchical) {
      if (actor_->high) high_.emplace(&*actor_->high);
      low_.emplace(&actor_->low);
      for (std::int64_t i = 0; i < plan_.value_steps; ++i) {
        Finish(++step, total, "value", ValueStep());
      }
      if (!opts_.value_only) {
        for (std::int64_t i = 0; i < plan_.high_steps; ++i) {
          Finish(++step, total, "high", HighStep());
        }
        for (std::int64_t i = 0; i < plan_.low_steps; ++i) {
          Finish(++step, total, "low", LowStep());
        }
      }
    } else {
      low_.emplace(&actor_->low);
      for (std::int64_t i = 0; i < plan_.flat_steps; ++i) {
        Finish(++step, total, "flat", FlatStep());
      }
    }
    result_.steps_done = step;
    result_.value = value_;
    result_.q = q_;
    result_.actor = actor_;
    if (result_.best_success < 0.0) {
      result_.best_checkpoint = Checkpoint();
      result_.best_step = step;
    }
    if (!opts_.metrics_dir.empty()) WriteEvals();
    return std::move(result_);
  }

 private:
  mazeworld::Batch ValueBatchSample() {
    return mazeworld::SampleBatch(data_, config_.batch_size,
                                  config_.value_goal_mix,
                                  config_.goal_geometric_p,
                                  config_.subgoal_steps, rng_);
  }

  mazeworld::Batch ActorBatchSample() {
    return mazeworld::SampleBatch(data_, config_.batch_size,
                                  config_.actor_goal_mix,
                                  config_.goal_geometric_p,
                                  config_.subgoal_steps, rng_);
  }

  valuelearn::ValueBatch ToValueBatch(const mazeworld::Batch& b) {
    const bool eikonal = config_.regularizer == Regularizer::kEikonal &&
                         config_.lambda_eik != 0.0;
    const valuelearn::Vector speeds =
        eikonal ? valuelearn::Speeds(b.states, speed_, data_.maze())
                : valuelearn::Vector::Ones(b.states.rows());
    return valuelearn::MakeValueBatch(b, speeds);
  }

  void FillValue(Row& r, const valuelearn::ValueStepMetrics& m) {
    r.td_loss = m.td_loss;
    r.penalty = m.penalty;
    r.grad_norm = m.mean_grad_norm;
    r.mean_value = m.mean_value;
  }

  Row ValueStep() {
    const mazeworld::Batch b = ValueBatchSample();
    Row r;
    FillValue(r, valuelearn::CombinedValueStep(value_, ToValueBatch(b), config_,
                                               env_.goal_radius, value_adam_));
    return r;
  }

  Row HighStep() {
    const mazeworld::Batch b = ActorBatchSample();
    const auto loss = policyextract::HighPolicyLoss(
        *actor_->high, value_, b, config_.beta, config_.awr_clip);
    high_->Step(loss, config_.lr_hi);
    return PolicyRow(loss);
  }

  Row LowStep() {
    const mazeworld::Batch b = ActorBatchSample();
    const auto loss = policyextract::LowPolicyLoss(
        actor_->low, value_, b, config_.beta, config_.awr_clip);
    low_->Step(loss, config_.lr_lo);
    return PolicyRow(loss);
  }

  Row FlatStep() {
    Row r;
    const mazeworld::Batch vb = ValueBatchSample();
    if (q_) {
      const valuelearn::Vector targets = policyextract::QBellmanTargets(
          value_, vb.states, vb.next_states, vb.goals, config_.gamma,
          env_.goal_radius);
      r.q_loss = policyextract::QBellmanStep(*q_, vb.states, vb.actions,
                                             vb.goals, targets, config_.lr_v,
                                             config_.tau, q_adam_);
      FillValue(r, valuelearn::ValueStepToTargets(
                       value_, ToValueBatch(vb),
                       q_->TargetValue(vb.states, vb.actions, vb.goals),
                       config_, value_adam_));
    } else {
      FillValue(r, valuelearn::CombinedValueStep(value_, ToValueBatch(vb),
                                                 config_, env_.goal_radius,
                                                 value_adam_));
    }
    const mazeworld::Batch ab = ActorBatchSample();
    const auto loss =
        q_ ? policyextract::FlatPolicyLoss(actor_->low, value_, *q_, ab,
                                           config_.beta, config_.awr_clip)
           : policyextract::FlatPolicyLoss(actor_->low, value_, ab,
                                           config_.beta, config_.awr_clip);
    low_->Step(loss, config_.lr_lo);
    const Row p = PolicyRow(loss);
    r.policy_loss = p.policy_loss;
    r.mean_weight = p.mean_weight;
    return r;
  }

  static Row PolicyRow(const policyextract::AwrLoss& loss) {
    Row r;
    r.policy_loss = loss.loss;
    r.mean_weight = loss.weights.mean();
    return r;
  }

  ParameterSet Checkpoint() const {
    return MakeCheckpoint(opts_.algo, value_, q_ ? &*q_ : nullptr, &*actor_);
  }

  bool ActorReady(std::int64_t step) const {
    if (!traits_.hierarchical) return true;
    return !opts_.value_only && step > plan_.value_steps + plan_.high_steps;
  }

  void Finish(std::int64_t step, std::int64_t total, const char* phase,
              const Row& row) {
    CheckFinite(row, step);
    const bool last = step == total;
    if (metrics_ && (step % config_.metrics_interval == 0 || last)) {
      const std::vector<double> v = row.Values();
      metrics_->Write(step, phase, v);
    }
    if (opts_.verbose && (step % 1000 == 0 || last)) {
      std::cerr << AlgoName(opts_.algo) << " step " << step << "/" << total
                << " " << phase << " td=" << row.td_loss
                << " pen=" << row.penalty << " pi=" << row.policy_loss << "\n";
    }
    const bool periodic =
        config_.eval_interval > 0 && step % config_.eval_interval == 0;
    if (opts_.evaluate && ActorReady(step) && (periodic || last)) {
      EvaluateNow(step);
    }
  }

  void EvaluateNow(std::int64_t step) {
    evalkit::EvalConfig ec;
    ec.n_goals = config_.eval_goals;
    ec.episodes_per_goal = config_.eval_episodes;
    ec.seed = DeriveSeed(config_.seed, {kEvalSeed});
    ec.threads = opts_.eval_threads;
    EvalRecord rec{step, evalkit::Evaluate(evalkit::ActorPolicy(*actor_, true),
                                           data_.maze(), ec)};
    if (opts_.verbose) {
      std::cerr << AlgoName(opts_.algo) << " eval step " << step
                << " success " << rec.report.mean_success << "\n";
    }
    if (rec.report.mean_success > result_.best_success) {
      result_.best_success = rec.report.mean_success;
      result_.best_step = step;
      result_.best_checkpoint = Checkpoint();
    }
    result_.evals.push_back(std::move(rec));
  }

  void WriteEvals() const {
    nlohmann::json j = nlohmann::json::array();
    for (const EvalRecord& r : result_.evals) {
      j.push_back({{"step", r.step}, {"report", evalkit::ReportToJson(r.report)}});
    }
    std::ofstream out(opts_.metrics_dir / "evals.json", std::ios::binary);
    out << j.dump(2) << '\n';
  }

  const mazeworld::Dataset& data_;
  TrainConfig config_;
  TrainOptions opts_;
  AlgoTraits traits_;
  PhasePlan plan_;
  mazeworld::EnvParams env_;
  valuelearn::SpeedProfile speed_;
  Rng rng_;
  ValueField value_;
  AdamState value_adam_;
  std::optional<QField> q_;
  AdamState q_adam_;
  std::optional<Actor> actor_;
  std::optional<PolicyTrainer> high_;
  std::optional<PolicyTrainer> low_;
  std::unique_ptr<valuelearn::MetricsWriter> metrics_;
  TrainResult result_{value_, {}, {}, 0, {}, {}, 0, -1.0};
};

}  // namespace

TrainResult Train(const mazeworld::Dataset& data, const TrainConfig& config,
                  const TrainOptions& options) {
  return Run(data, config, options).Go();
}

}  // namespace eikgcrl::cli
