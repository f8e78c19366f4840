#pragma once

#include <Eigen/Dense>
#include <string>

#include "lgr2/errors.hpp"

namespace lgr2 {

using Vec = Eigen::VectorXd;
using Vecf = Eigen::VectorXf;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat = Eigen::MatrixXd;

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

enum class EnvKind { maze, pick_place, bin };

// Which state components a goal-distance reward compares against the goal.
enum class FeatureSelector { gripper_pos, object_pos };

inline std::string to_string(EnvKind k) {
  switch (k) {
    case EnvKind::maze: return "maze";
    case EnvKind::pick_place: return "pick_place";
    case EnvKind::bin: return "bin";
  }
  return "?";
}

inline EnvKind env_kind_from_string(const std::string& s) {
  if (s == "maze") return EnvKind::maze;
  if (s == "pick_place") return EnvKind::pick_place;
  if (s == "bin") return EnvKind::bin;
  throw ConfigError("unknown env kind: '" + s + "'");
}

inline std::string to_string(FeatureSelector f) {
  return f == FeatureSelector::gripper_pos ? "gripper_pos" : "object_pos";
}

inline FeatureSelector feature_from_string(const std::string& s) {
  if (s == "gripper_pos") return FeatureSelector::gripper_pos;
  if (s == "object_pos") return FeatureSelector::object_pos;
  throw ConfigError("unknown feature selector: '" + s + "'");
}

// Gripper feature is the first three observation components in every
// layout; the object occupies the next three in manipulation layouts.
inline Vec3 extract_feature(const Vec& obs, FeatureSelector f) {
  if (f == FeatureSelector::gripper_pos) {
    if (obs.size() < 3) throw InputError("observation too short for gripper feature");
    return obs.head<3>();
  }
  if (obs.size() < 6) throw InputError("observation too short for object feature");
  return obs.segment<3>(3);
}

}  // namespace lgr2
