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

#include "eikgcrl/valuelearn/config.h"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "eikgcrl/errors.h"

namespace eikgcrl::valuelearn {

using nlohmann::json;

const char* RegularizerName(Regularizer r) {
  switch (r) {
    case Regularizer::kNone:
      return "none";
    case Regularizer::kEikonal:
      return "eikonal";
    case Regularizer::kHjb:
      return "hjb";
  }
  return "?";
}

Regularizer ParseRegularizer(std::string_view name) {
  if (name == "none") return Regularizer::kNone;
  if (name == "eikonal") return Regularizer::kEikonal;
  if (name == "hjb") return Regularizer::kHjb;
  throw InvalidArgument("unknown regularizer '" + std::string(name) + "'");
}

const char* SpeedKindName(SpeedKind k) {
  switch (k) {
    case SpeedKind::kUnit:
      return "unit";
    case SpeedKind::kExp:
      return "exp";
    case SpeedKind::kLin:
      return "lin";
  }
  return "?";
}

SpeedKind ParseSpeedKind(std::string_view name) {
  if (name == "unit") return SpeedKind::kUnit;
  if (name == "exp") return SpeedKind::kExp;
  if (name == "lin") return SpeedKind::kLin;
  throw InvalidArgument("unknown speed profile '" + std::string(name) + "'");
}

namespace {

void Require(bool ok, const char* field, const char* rule) {
  if (!ok) throw InvalidArgument(std::string(field) + " must be " + rule);
}

json MixToJson(const mazeworld::GoalMix& m) {
  return json::array({m.p_current, m.p_future, m.p_random});
}

mazeworld::GoalMix MixFromJson(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw InvalidArgument(std::string(field) + " must be [current, future, random]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void ValidateConfig(const TrainConfig& c) {
  Require(c.gamma > 0.0 && c.gamma <= 1.0, "gamma", "in (0, 1]");
  Require(c.iota >= 0.5 && c.iota <= 1.0, "iota", "in [0.5, 1]");
  Require(std::isfinite(c.beta) && c.beta >= 0.0, "beta", ">= 0");
  Require(c.tau >= 0.0 && c.tau <= 1.0, "tau", "in [0, 1]");
  Require(c.lr_v > 0.0 && c.lr_hi > 0.0 && c.lr_lo > 0.0, "lr_v/lr_hi/lr_lo",
          "> 0");
  Require(c.batch_size >= 1, "batch_size", ">= 1");
  Require(std::isfinite(c.lambda_eik) && c.lambda_eik >= 0.0, "lambda_eik",
          ">= 0");
  Require(std::isfinite(c.lambda_decay) && c.lambda_decay >= 0.0,
          "lambda_decay", ">= 0");
  Require(c.s_min > 0.0 && c.s_min <= 1.0, "s_min", "in (0, 1]");
  Require(!c.hidden_dims.empty(), "hidden_dims", "non-empty");
  for (int h : c.hidden_dims) Require(h >= 1, "hidden_dims", "positive");
  Require(c.value_scale > 0.0, "value_scale", "> 0");
  mazeworld::ValidateGoalMix(c.value_goal_mix);
  mazeworld::ValidateGoalMix(c.actor_goal_mix);
  Require(c.goal_geometric_p > 0.0 && c.goal_geometric_p <= 1.0,
          "goal_geometric_p", "in (0, 1]");
  Require(c.subgoal_steps >= 1, "subgoal_steps", ">= 1");
  Require(c.awr_clip > 0.0, "awr_clip", "> 0");
  Require(c.eval_interval >= 0, "eval_interval", ">= 0");
  Require(c.eval_goals >= 1, "eval_goals", ">= 1");
  Require(c.eval_episodes >= 1, "eval_episodes", ">= 1");
  Require(c.metrics_interval >= 1, "metrics_interval", ">= 1");
  if (c.regularizer != Regularizer::kNone) {
    Require(c.activation != diffcore::Activation::kRelu, "activation",
            "twice differentiable (tanh or softplus) with a gradient penalty");
  }
}

json ConfigToJson(const TrainConfig& c) {
  return {
      {"format", kConfigFormatVersion},
      {"gamma", c.gamma},
      {"iota", c.iota},
      {"beta", c.beta},
      {"tau", c.tau},
      {"lr_v", c.lr_v},
      {"lr_hi", c.lr_hi},
      {"lr_lo", c.lr_lo},
      {"batch_size", c.batch_size},
      {"lambda_eik", c.lambda_eik},
      {"lambda_decay", c.lambda_decay},
      {"s_min", c.s_min},
      {"regularizer", RegularizerName(c.regularizer)},
      {"speed_profile", SpeedKindName(c.speed_profile)},
      {"seed", c.seed},
      {"hidden_dims", c.hidden_dims},
      {"activation", diffcore::ActivationName(c.activation)},
      {"value_scale", c.value_scale},
      {"value_goal_mix", MixToJson(c.value_goal_mix)},
      {"actor_goal_mix", MixToJson(c.actor_goal_mix)},
      {"goal_geometric_p", c.goal_geometric_p},
      {"subgoal_steps", c.subgoal_steps},
      {"awr_clip", c.awr_clip},
      {"eval_interval", c.eval_interval},
      {"eval_goals", c.eval_goals},
      {"eval_episodes", c.eval_episodes},
      {"metrics_interval", c.metrics_interval},
  };
}

TrainConfig ConfigFromJson(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  const std::set<std::string> known = [] {
    std::set<std::string> k;
    const json defaults = ConfigToJson(TrainConfig{});
    for (const auto& [key, _] : defaults.items()) k.insert(key);
    return k;
  }();
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw InvalidArgument("unknown config key '" + key + "'");
  }
  if (j.contains("format") && j["format"] != kConfigFormatVersion) {
    throw InvalidArgument("unsupported config format");
  }
  TrainConfig c;
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("gamma", c.gamma);
    get("iota", c.iota);
    get("beta", c.beta);
    get("tau", c.tau);
    get("lr_v", c.lr_v);
    get("lr_hi", c.lr_hi);
    get("lr_lo", c.lr_lo);
    get("batch_size", c.batch_size);
    get("lambda_eik", c.lambda_eik);
    get("lambda_decay", c.lambda_decay);
    get("s_min", c.s_min);
    get("seed", c.seed);
    get("hidden_dims", c.hidden_dims);
    get("value_scale", c.value_scale);
    get("goal_geometric_p", c.goal_geometric_p);
    get("subgoal_steps", c.subgoal_steps);
    get("awr_clip", c.awr_clip);
    get("eval_interval", c.eval_interval);
    get("eval_goals", c.eval_goals);
    get("eval_episodes", c.eval_episodes);
    get("metrics_interval", c.metrics_interval);
    if (j.contains("regularizer")) {
      c.regularizer = ParseRegularizer(j["regularizer"].get<std::string>());
    }
    if (j.contains("speed_profile")) {
      c.speed_profile = ParseSpeedKind(j["speed_profile"].get<std::string>());
    }
    if (j.contains("activation")) {
      c.activation =
          diffcore::ParseActivation(j["activation"].get<std::string>());
    }
    if (j.contains("value_goal_mix")) {
      c.value_goal_mix = MixFromJson(j["value_goal_mix"], "value_goal_mix");
    }
    if (j.contains("actor_goal_mix")) {
      c.actor_goal_mix = MixFromJson(j["actor_goal_mix"], "actor_goal_mix");
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  ValidateConfig(c);
  return c;
}

TrainConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path + ": " + e.what());
  }
  return ConfigFromJson(j);
}

}  // namespace eikgcrl::valuelearn
