#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lgr2/maze.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

// World layout shared by all tasks: x and y live on the table grid
// (columns/rows of a W x H matrix, W, H in [10, 20]); z is the gripper
// height in length units, between the table surface and the arm's reach.
struct Workspace {
  double x_max = 10.0;
  double y_max = 10.0;
  double table_height = 0.42;
  double max_height = 0.66;

  Vec3 lo() const { return Vec3(0.0, 0.0, table_height); }
  Vec3 hi() const { return Vec3(x_max, y_max, max_height); }
};

// Dynamic part of the simulation state. Static structure (maze walls, bin
// placement, table size) lives in the Environment.
struct EnvState {
  Vec3 gripper_pos = Vec3::Zero();
  Vec3 gripper_vel = Vec3::Zero();
  Vec3 object_pos = Vec3::Zero();   // manipulation envs only
  Vec3 object_vel = Vec3::Zero();
  double gripper_open = 1.0;        // 0 closed, 1 open
  bool attached = false;            // object rigidly follows the gripper
};

struct StepResult {
  EnvState state;
  double env_reward = -1.0;  // -1{dist(achieved, goal) > eps}
  Vec3 achieved = Vec3::Zero();
};

struct EnvOptions {
  int maze_width = 10;
  int maze_height = 10;
  int table_width = 10;
  int table_height_cells = 10;
};

// Deterministic kinematic simulation of the maze-navigation, pick-and-place
// and bin tasks. All randomness happens in reset(); step() is a pure
// function of (structure, goal, state, action). Instances are independent
// and copyable; a single instance must not be stepped concurrently.
class Environment {
 public:
  using Options = EnvOptions;

  Environment(EnvKind kind, std::uint64_t structure_seed, EnvOptions opts = EnvOptions());

  EnvKind kind() const { return kind_; }
  const Workspace& workspace() const { return ws_; }
  const MazeSpec& maze() const;
  Vec3 bin_center() const;

  int obs_dim() const;
  static constexpr int kGoalDim = 3;
  static constexpr int kActionDim = 4;

  // Success tolerance: half a maze cell; the same radius on the table grid
  // for manipulation.
  double epsilon() const { return 0.5; }

  // Height at which pick-and-place goals hover above the table.
  static constexpr double kPickGoalHeight = 0.55;

  // Per-step displacement at full action deflection, per axis.
  static Vec3 action_scale() { return Vec3(0.5, 0.5, 0.05); }

  static constexpr double kGraspRadius = 0.3;

  // Places the gripper (and object/goal where applicable) and returns the
  // initial state together with a valid task goal. The goal can then be
  // overridden via set_goal (e.g. with a language-derived goal).
  std::pair<EnvState, Vec3> reset(std::uint64_t rng_seed);

  void set_goal(const Vec3& g);
  const Vec3& goal() const { return goal_; }

  StepResult step(const EnvState& state, const Vec4& action) const;

  // Observation layouts: maze [dx, M]; manipulation [dx, o, q, e] with
  // q = o - dx and e the 11 velocity/gripper components.
  Vec observe(const EnvState& state) const;
  EnvState state_from_obs(const Vec& obs) const;

  // Task feature compared against the goal: gripper position in the maze,
  // object position in manipulation envs.
  Vec3 achieved_goal(const EnvState& state) const;

  // True iff the goal satisfies the task's placement rules (inside the
  // workspace; not on a maze wall/gate/start cell).
  bool goal_valid(const Vec3& g, std::string* why = nullptr) const;

  bool in_wall(const Vec3& pos) const;

 private:
  Vec3 clamp_workspace(Vec3 p) const;
  Vec3 move_gripper(const Vec3& from, const Vec3& delta) const;

  EnvKind kind_;
  Workspace ws_;
  MazeSpec maze_;       // maze only
  Vec maze_occ_;        // cached occupancy
  Vec3 bin_center_ = Vec3::Zero();  // bin only
  double bin_half_ = 1.0;
  Vec3 goal_ = Vec3::Zero();
};

// Lower-level transition (s_t, g_t, a_t, r_t, s_{t+1}). Observations and
// goals are stored as float32 to keep desk-scale buffers compact.
struct PrimitiveTransition {
  Vecf s;
  Vecf g;       // subgoal the lower policy was conditioned on
  Vecf a;
  double r_l = -1.0;
  Vecf s_next;
  double env_reward = -1.0;  // task reward observed at this step
  bool terminal = false;     // last step of its episode
};

// Scripted waypoint controller (approach, grasp, lift, transport, release)
// producing a successful demonstration. Only manipulation tasks have demos.
std::vector<PrimitiveTransition> scripted_demo(const Environment& env,
                                               std::uint64_t rng_seed);

}  // namespace lgr2
