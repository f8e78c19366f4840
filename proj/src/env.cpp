#include "lgr2/env.hpp"

#include <cmath>
#include <string>

#include "lgr2/rng.hpp"

namespace lgr2 {

namespace {
constexpr double kFaceEps = 1e-9;  // keeps clamped positions out of wall cells
constexpr int kVelDim = 11;
}  // namespace

Environment::Environment(EnvKind kind, std::uint64_t structure_seed, EnvOptions opts)
    : kind_(kind) {
  if (kind_ == EnvKind::maze) {
    maze_ = generate_maze_sized(opts.maze_width, opts.maze_height, structure_seed);
    maze_occ_ = occupancy(maze_);
    ws_.x_max = maze_.width * maze_.cell_size;
    ws_.y_max = maze_.height * maze_.cell_size;
  } else {
    ws_.x_max = opts.table_width;
    ws_.y_max = opts.table_height_cells;
    if (kind_ == EnvKind::bin) {
      Rng rng(structure_seed);
      bin_center_ = Vec3(rng.uniform(bin_half_, ws_.x_max - bin_half_),
                         rng.uniform(bin_half_, ws_.y_max - bin_half_),
                         ws_.table_height);
    }
  }
}

const MazeSpec& Environment::maze() const {
  if (kind_ != EnvKind::maze) throw StateError("not a maze environment");
  return maze_;
}

Vec3 Environment::bin_center() const {
  if (kind_ != EnvKind::bin) throw StateError("not a bin environment");
  return bin_center_;
}

int Environment::obs_dim() const {
  if (kind_ == EnvKind::maze) return 3 + maze_.width * maze_.height;
  return 3 + 3 + 3 + kVelDim;
}

std::pair<EnvState, Vec3> Environment::reset(std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  EnvState s;
  Vec3 g;
  if (kind_ == EnvKind::maze) {
    s.gripper_pos = cell_center(maze_, MazeSpec::kStartCell);
    s.gripper_open = 0.0;  // closed gripper rides the maze
    // Default goal: a free cell in the bottom-right room.
    std::vector<Cell> candidates;
    for (int y = 1; y < maze_.wall_row; ++y)
      for (int x = maze_.wall_col + 1; x < maze_.width - 1; ++x)
        if (!is_wall(maze_, x, y) && !is_gate(maze_, x, y) && !(Cell{x, y} == MazeSpec::kStartCell))
          candidates.push_back(Cell{x, y});
    if (candidates.empty()) throw InternalError("maze has no free goal cell");
    g = cell_center(maze_, candidates[rng.below(candidates.size())]);
  } else {
    s.gripper_pos = Vec3(ws_.x_max / 2.0, ws_.y_max / 2.0, ws_.table_height + 0.06);
    s.gripper_open = 1.0;
    if (kind_ == EnvKind::pick_place) {
      s.object_pos = Vec3(rng.uniform(1.0, ws_.x_max - 1.0),
                          rng.uniform(1.0, ws_.y_max - 1.0), ws_.table_height);
      g = Vec3(rng.uniform(1.0, ws_.x_max - 1.0), rng.uniform(1.0, ws_.y_max - 1.0),
               kPickGoalHeight);
    } else {
      // Object starts on the table outside the bin; the goal sits at the
      // bin centre.
      do {
        s.object_pos = Vec3(rng.uniform(1.0, ws_.x_max - 1.0),
                            rng.uniform(1.0, ws_.y_max - 1.0), ws_.table_height);
      } while ((s.object_pos.head<2>() - bin_center_.head<2>()).cwiseAbs().maxCoeff() <=
               bin_half_);
      g = bin_center_;
    }
  }
  goal_ = g;
  return {s, g};
}

void Environment::set_goal(const Vec3& g) {
  std::string why;
  if (!goal_valid(g, &why)) throw ValidationError("invalid goal: " + why);
  goal_ = g;
}

bool Environment::goal_valid(const Vec3& g, std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!g.allFinite()) return fail("goal is not finite");
  if (g.x() < 0.0 || g.x() > ws_.x_max || g.y() < 0.0 || g.y() > ws_.y_max)
    return fail("goal outside the table bounds");
  if (g.z() < ws_.table_height - 1e-12) return fail("goal below the table");
  if (g.z() > ws_.max_height + 1e-12) return fail("goal above the arm's maximum reach");
  if (kind_ == EnvKind::maze) {
    const Cell c = cell_of(maze_, std::min(g.x(), ws_.x_max - kFaceEps),
                           std::min(g.y(), ws_.y_max - kFaceEps));
    if (is_gate(maze_, c.x, c.y)) return fail("goal coincides with a gate cell");
    if (is_wall(maze_, c.x, c.y)) return fail("goal coincides with a wall cell");
    if (c == MazeSpec::kStartCell) return fail("goal coincides with the starting position");
  }
  return true;
}

Vec3 Environment::clamp_workspace(Vec3 p) const {
  p.x() = std::clamp(p.x(), 0.0, ws_.x_max);
  p.y() = std::clamp(p.y(), 0.0, ws_.y_max);
  p.z() = std::clamp(p.z(), ws_.table_height, ws_.max_height);
  return p;
}

bool Environment::in_wall(const Vec3& pos) const {
  if (kind_ != EnvKind::maze) return false;
  const Cell c = cell_of(maze_, pos.x(), pos.y());
  return is_wall(maze_, c.x, c.y) && !is_gate(maze_, c.x, c.y);
}

// Axis-independent collision: x is resolved first, then y with the updated
// x. Blocked axes clamp at the wall face; free axes keep moving.
Vec3 Environment::move_gripper(const Vec3& from, const Vec3& delta) const {
  Vec3 p = clamp_workspace(from + delta);
  if (kind_ != EnvKind::maze) return p;

  const double cs = maze_.cell_size;
  double x = from.x();
  {
    double nx = std::clamp(from.x() + delta.x(), 0.0, ws_.x_max - kFaceEps);
    const Cell c = cell_of(maze_, nx, from.y());
    if (is_wall(maze_, c.x, c.y)) {
      nx = delta.x() > 0.0 ? c.x * cs - kFaceEps : (c.x + 1) * cs + kFaceEps;
    }
    x = nx;
  }
  double y = from.y();
  {
    double ny = std::clamp(from.y() + delta.y(), 0.0, ws_.y_max - kFaceEps);
    const Cell c = cell_of(maze_, x, ny);
    if (is_wall(maze_, c.x, c.y)) {
      ny = delta.y() > 0.0 ? c.y * cs - kFaceEps : (c.y + 1) * cs + kFaceEps;
    }
    y = ny;
  }
  return Vec3(x, y, maze_.table_height);
}

StepResult Environment::step(const EnvState& state, const Vec4& action) const {
  if (!action.allFinite()) throw InputError("action contains non-finite components");
  const Vec4 a = action.cwiseMax(0.0).cwiseMin(1.0);

  const Vec3 delta = action_scale().cwiseProduct(2.0 * a.head<3>() - Vec3::Ones());

  EnvState next = state;
  next.gripper_pos = move_gripper(state.gripper_pos, delta);
  next.gripper_open = kind_ == EnvKind::maze ? 0.0 : a[3];
  next.gripper_vel = next.gripper_pos - state.gripper_pos;

  if (kind_ != EnvKind::maze) {
    const bool closed = next.gripper_open < 0.5;
    next.attached = state.attached;
    if (next.attached && !closed) {
      // Released: the object falls straight down onto the table.
      next.attached = false;
      next.object_pos = state.object_pos;
      next.object_pos.z() = ws_.table_height;
    } else if (!next.attached && closed &&
               (state.object_pos - next.gripper_pos).norm() <= kGraspRadius) {
      next.attached = true;
    }
    if (next.attached) {
      next.object_pos = next.gripper_pos;
    } else if (!state.attached) {
      next.object_pos = state.object_pos;  // resting on the table
    }
    next.object_vel = next.object_pos - state.object_pos;
  }

  StepResult out;
  out.achieved = achieved_goal(next);
  out.env_reward = (out.achieved - goal_).norm() > epsilon() ? -1.0 : 0.0;
  out.state = std::move(next);
  return out;
}

Vec Environment::observe(const EnvState& state) const {
  Vec o(obs_dim());
  if (kind_ == EnvKind::maze) {
    o.head<3>() = state.gripper_pos;
    o.tail(maze_occ_.size()) = maze_occ_;
    return o;
  }
  o.head<3>() = state.gripper_pos;
  o.segment<3>(3) = state.object_pos;
  o.segment<3>(6) = state.object_pos - state.gripper_pos;  // q = o - dx
  Vec e = Vec::Zero(kVelDim);
  e.head<3>() = state.gripper_vel;
  e.segment<3>(3) = state.object_vel;
  // components 6..8: object angular velocity (identically zero in the
  // kinematic model)
  e[9] = state.gripper_open;
  e[10] = state.attached ? 1.0 : 0.0;
  o.tail(kVelDim) = e;
  return o;
}

EnvState Environment::state_from_obs(const Vec& obs) const {
  if (obs.size() != obs_dim()) throw InputError("observation has wrong dimension");
  EnvState s;
  s.gripper_pos = obs.head<3>();
  if (kind_ == EnvKind::maze) {
    s.gripper_open = 0.0;
    return s;
  }
  s.object_pos = obs.segment<3>(3);
  s.gripper_vel = obs.segment<3>(9);
  s.object_vel = obs.segment<3>(12);
  s.gripper_open = obs[18];
  s.attached = obs[19] > 0.5;
  return s;
}

Vec3 Environment::achieved_goal(const EnvState& state) const {
  return kind_ == EnvKind::maze ? state.gripper_pos : state.object_pos;
}

namespace {

// One controller step toward a waypoint; clamps the requested displacement
// into the action box.
Vec4 waypoint_action(const Vec3& pos, const Vec3& target, double grip) {
  const Vec3 scale = Environment::action_scale();
  Vec4 a;
  for (int i = 0; i < 3; ++i) {
    const double d = std::clamp(target[i] - pos[i], -scale[i], scale[i]);
    a[i] = (d / scale[i] + 1.0) / 2.0;
  }
  a[3] = grip;
  return a;
}

}  // namespace

std::vector<PrimitiveTransition> scripted_demo(const Environment& env,
                                               std::uint64_t rng_seed) {
  if (env.kind() == EnvKind::maze)
    throw ConfigError("no demonstration is used for the maze task");

  Environment sim = env;  // run on a private copy
  auto [state, goal] = sim.reset(rng_seed);

  struct Waypoint {
    Vec3 target;
    double grip;
  };
  const double table = sim.workspace().table_height;
  const double lift = Environment::kPickGoalHeight;
  const Vec3 obj = state.object_pos;
  std::vector<Waypoint> plan = {
      {Vec3(obj.x(), obj.y(), lift), 1.0},    // approach above the object
      {Vec3(obj.x(), obj.y(), table), 1.0},   // descend
      {Vec3(obj.x(), obj.y(), table), 0.0},   // close and grasp
      {Vec3(obj.x(), obj.y(), lift), 0.0},    // lift
      {goal + Vec3(0, 0, lift - goal.z()), 0.0},  // transport at lift height
      {goal, 0.0},                            // settle onto the goal
  };
  if (sim.kind() == EnvKind::bin) plan.push_back({goal, 1.0});  // release into the bin

  std::vector<PrimitiveTransition> demo;
  std::size_t wp = 0;
  int settle = 0;
  const int max_steps = 2000;
  for (int t = 0; t < max_steps; ++t) {
    const Waypoint& w = plan[wp];
    // Quantize to float32 so that replaying the stored actions reproduces
    // the stored states bit-exactly.
    const Vec4 a =
        waypoint_action(state.gripper_pos, w.target, w.grip).cast<float>().cast<double>();
    StepResult r = sim.step(state, a);

    PrimitiveTransition tr;
    tr.s = sim.observe(state).cast<float>();
    tr.g = w.target.cast<float>();
    tr.a = a.cast<float>();
    tr.env_reward = r.env_reward;
    tr.r_l = (sim.achieved_goal(r.state) - w.target).norm() > sim.epsilon() ? -1.0 : 0.0;
    tr.s_next = sim.observe(r.state).cast<float>();
    state = r.state;
    demo.push_back(std::move(tr));

    const bool at_waypoint = (state.gripper_pos - w.target).norm() < 1e-6;
    const bool grip_done = std::abs(state.gripper_open - w.grip) < 1e-9;
    if (at_waypoint && grip_done && ++settle >= 2) {
      settle = 0;
      if (wp + 1 < plan.size()) ++wp;
    }
    if (wp == plan.size() - 1 && r.env_reward == 0.0 &&
        (sim.kind() == EnvKind::pick_place || !state.attached)) {
      demo.back().terminal = true;
      return demo;
    }
  }
  throw InternalError("scripted demonstration failed to reach the goal");
}

}  // namespace lgr2
