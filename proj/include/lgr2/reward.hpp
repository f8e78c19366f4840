#pragma once

#include <optional>
#include <string>

#include "lgr2/env.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

enum class TranslatorSource { grammar, llm };

// Stationary higher-level reward parameters: the final goal configuration,
// a tolerance, and which state feature the reward compares. Produced from
// a language instruction; independent of any policy.
struct RewardParams {
  Vec3 goal = Vec3::Zero();
  double tolerance = 0.5;
  FeatureSelector feature = FeatureSelector::gripper_pos;
  EnvKind env_kind = EnvKind::maze;
  TranslatorSource source = TranslatorSource::grammar;
};

FeatureSelector default_feature(EnvKind kind);

// Throws ValidationError unless tolerance > 0 and the goal satisfies the
// environment's placement rules.
void validate_reward_params(const RewardParams& params, const Environment& env);

// Sparse goal-distance indicator: 0 if the selected feature lies within
// `tolerance` of the goal, else -1. `goal_override` substitutes the goal
// (hindsight relabeling); everything else is ignored. Pure function of its
// arguments.
double evaluate_reward(const RewardParams& params, const Vec& obs,
                       const std::optional<Vec3>& goal_override = std::nullopt);

double evaluate_reward(const RewardParams& params, const Environment& env,
                       const EnvState& state,
                       const std::optional<Vec3>& goal_override = std::nullopt);

// JSON object with fields "goal", "tolerance", "feature", "env".
std::string reward_params_to_json(const RewardParams& params);
RewardParams reward_params_from_json(const std::string& json_text);

}  // namespace lgr2
