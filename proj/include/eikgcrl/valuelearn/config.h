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

#ifndef EIKGCRL_VALUELEARN_CONFIG_H_
#define EIKGCRL_VALUELEARN_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/mazeworld/goal_sampler.h"

namespace eikgcrl::valuelearn {

enum class Regularizer { kNone, kEikonal, kHjb };
enum class SpeedKind { kUnit, kExp, kLin };

const char* RegularizerName(Regularizer r);
Regularizer ParseRegularizer(std::string_view name);
const char* SpeedKindName(SpeedKind k);
SpeedKind ParseSpeedKind(std::string_view name);

inline constexpr int kConfigFormatVersion = 1;

struct TrainConfig {
  double gamma = 0.99;
  double iota = 0.7;
  double beta = 3.0;
  double tau = 0.005;
  double lr_v = 3e-4;
  double lr_hi = 3e-4;
  double lr_lo = 3e-4;
  int batch_size = 1024;
  double lambda_eik = 1.0;
  double lambda_decay = 1.0;
  double s_min = 0.1;
  Regularizer regularizer = Regularizer::kEikonal;
  SpeedKind speed_profile = SpeedKind::kUnit;
  std::uint64_t seed = 0;

  std::vector<int> hidden_dims = {256, 256};
  diffcore::Activation activation = diffcore::Activation::kTanh;
  // Network output is multiplied by this; values live in [-1/(1-gamma), 0].
  double value_scale = 100.0;
  mazeworld::GoalMix value_goal_mix = {0.2, 0.5, 0.3};
  mazeworld::GoalMix actor_goal_mix = {0.0, 1.0, 0.0};
  // Success probability of the geometric future-goal offset.
  double goal_geometric_p = 0.01;
  int subgoal_steps = 10;
  double awr_clip = 100.0;
  // Evaluation during the policy phase; 0 disables it.
  int eval_interval = 2000;
  int eval_goals = 5;
  int eval_episodes = 50;
  int metrics_interval = 100;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Throws InvalidArgument naming the first out-of-range field.
void ValidateConfig(const TrainConfig& config);

nlohmann::json ConfigToJson(const TrainConfig& config);
// Missing keys keep their defaults; unknown keys and a "format" other than 1
// are rejected with InvalidArgument.
TrainConfig ConfigFromJson(const nlohmann::json& j);
TrainConfig LoadConfig(const std::string& path);

}  // namespace eikgcrl::valuelearn

#endif  // EIKGCRL_VALUELEARN_CONFIG_H_
