#pragma once

#include <string>

#include "lgr2/reward.hpp"

namespace lgr2 {

// Deterministic instruction grammar (the CI-safe translator backend):
//
//   <verb> [<object words>] (to|at) <target> [at table height] [tolerance <t>]
//
//   verb   := move | navigate | place | put | go
//   target := "(" x "," y ["," z] ")"
//           | [the] bottom right corner
//           | [the] bin center|centre
//
// Coordinates are table-grid units for x and y and height units for z.
// An omitted z resolves to the environment's default goal height; "at
// table height" pins z to the table surface. An omitted tolerance
// defaults to the environment's success tolerance. The resolved goal is
// validated against the environment's placement rules.
RewardParams parse_instruction(const std::string& text, const Environment& env);

// Shared with the LLM path: clamps a maze goal's height onto the table
// (the maze gripper is pinned there) after range validation.
Vec3 project_goal(const Vec3& goal, const Environment& env);

}  // namespace lgr2
