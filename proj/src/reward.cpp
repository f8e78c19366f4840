#include "lgr2/reward.hpp"

#include <nlohmann/json.hpp>

namespace lgr2 {

using nlohmann::json;

FeatureSelector default_feature(EnvKind kind) {
  return kind == EnvKind::maze ? FeatureSelector::gripper_pos
                               : FeatureSelector::object_pos;
}

void validate_reward_params(const RewardParams& params, const Environment& env) {
  if (params.env_kind != env.kind())
    throw ValidationError("reward parameters were produced for a different environment");
  if (!(params.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  std::string why;
  if (!env.goal_valid(params.goal, &why)) throw ValidationError(why);
}

double evaluate_reward(const RewardParams& params, const Vec& obs,
                       const std::optional<Vec3>& goal_override) {
  const Vec3 feature = extract_feature(obs, params.feature);
  const Vec3& g = goal_override ? *goal_override : params.goal;
  return (feature - g).norm() > params.tolerance ? -1.0 : 0.0;
}

double evaluate_reward(const RewardParams& params, const Environment& env,
                       const EnvState& state,
                       const std::optional<Vec3>& goal_override) {
  return evaluate_reward(params, env.observe(state), goal_override);
}

std::string reward_params_to_json(const RewardParams& params) {
  json j;
  j["goal"] = {params.goal.x(), params.goal.y(), params.goal.z()};
  j["tolerance"] = params.tolerance;
  j["feature"] = to_string(params.feature);
  j["env"] = to_string(params.env_kind);
  return j.dump();
}

RewardParams reward_params_from_json(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw InputError("reward parameters are not valid JSON");
  RewardParams p;
  try {
    const auto& g = j.at("goal");
    if (!g.is_array() || g.size() != 3) throw InputError("goal must be a 3-array");
    p.goal = Vec3(g[0].get<double>(), g[1].get<double>(), g[2].get<double>());
    p.tolerance = j.at("tolerance").get<double>();
    p.feature = feature_from_string(j.at("feature").get<std::string>());
    p.env_kind = env_kind_from_string(j.at("env").get<std::string>());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed reward parameters: ") + e.what());
  }
  return p;
}

}  // namespace lgr2
