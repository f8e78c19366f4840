#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgr2/env.hpp"
#include "lgr2/rng.hpp"

using namespace lgr2;

namespace {

Vec4 action(double x, double y, double z, double grip) { return Vec4(x, y, z, grip); }

Vec4 random_action(Rng& rng) {
  return Vec4(rng.uniform01(), rng.uniform01(), rng.uniform01(), rng.uniform01());
}

}  // namespace

TEST_CASE("maze reset starts at cell (1,3) center at table height") {
  Environment env(EnvKind::maze, 3);
  const auto [state, goal] = env.reset(3);
  CHECK(state.gripper_pos.x() == doctest::Approx(1.5));
  CHECK(state.gripper_pos.y() == doctest::Approx(3.5));
  CHECK(state.gripper_pos.z() == doctest::Approx(0.42));
  CHECK(env.goal_valid(goal));
}

TEST_CASE("pick_place goals hover at the fixed height") {
  Environment env(EnvKind::pick_place, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [state, goal] = env.reset(seed);
    CHECK(goal.z() == doctest::Approx(Environment::kPickGoalHeight));
    CHECK(state.object_pos.z() == doctest::Approx(0.42));  // block on the table
  }
}

TEST_CASE("bin sits fully inside the table and the goal is its centre") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Environment env(EnvKind::bin, seed);
    const Vec3 c = env.bin_center();
    CHECK(c.x() >= 1.0);
    CHECK(c.x() <= env.workspace().x_max - 1.0);
    CHECK(c.y() >= 1.0);
    CHECK(c.y() <= env.workspace().y_max - 1.0);
    const auto [state, goal] = env.reset(seed);
    CHECK((goal - c).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("unknown goal placements are rejected") {
  Environment env(EnvKind::maze, 1);
  std::string why;
  CHECK_FALSE(env.goal_valid(Vec3(-1, 3, 0.42), &why));
  CHECK_FALSE(env.goal_valid(Vec3(3, 3, 0.9), &why));
  const MazeSpec& m = env.maze();
  const Vec3 wall = cell_center(m, Cell{m.wall_col, m.wall_row});
  CHECK_FALSE(env.goal_valid(wall, &why));
  const Vec3 start = cell_center(m, MazeSpec::kStartCell);
  CHECK_FALSE(env.goal_valid(start, &why));
}

TEST_CASE("centered action produces zero displacement") {
  Environment env(EnvKind::pick_place, 5);
  auto [state, goal] = env.reset(5);
  const StepResult r = env.step(state, action(0.5, 0.5, 0.5, 1.0));
  CHECK((r.state.gripper_pos - state.gripper_pos).norm() == doctest::Approx(0.0));
}

TEST_CASE("motion into a wall clamps at the wall face") {
  Environment env(EnvKind::maze, 3);
  const MazeSpec& m = env.maze();
  // Stand just left of the wall column, then push right repeatedly.
  EnvState s;
  // Pick a row on the vertical wall that is not a gate.
  int row = 1;
  while (is_gate(m, m.wall_col, row)) ++row;
  s.gripper_pos = cell_center(m, Cell{m.wall_col - 1, row});
  for (int i = 0; i < 10; ++i) {
    const StepResult r = env.step(s, action(1.0, 0.5, 0.5, 0.0));
    s = r.state;
    CHECK_FALSE(env.in_wall(s.gripper_pos));
  }
  CHECK(s.gripper_pos.x() == doctest::Approx(m.wall_col * m.cell_size).epsilon(1e-6));
}

TEST_CASE("achieved goal equal to the task goal yields zero reward") {
  Environment env(EnvKind::maze, 3);
  auto [state, goal] = env.reset(3);
  state.gripper_pos = goal;
  const StepResult r = env.step(state, action(0.5, 0.5, 0.5, 0.0));
  CHECK(r.env_reward == 0.0);
}

TEST_CASE("NaN actions are rejected") {
  Environment env(EnvKind::maze, 3);
  auto [state, goal] = env.reset(3);
  CHECK_THROWS_AS(env.step(state, action(std::nan(""), 0.5, 0.5, 0.0)), InputError);
}

TEST_CASE("determinism: seed and action sequence determine the states") {
  for (EnvKind kind : {EnvKind::maze, EnvKind::pick_place, EnvKind::bin}) {
    Environment env(kind, 9);
    Rng actions_a(123), actions_b(123);
    auto [sa, ga] = env.reset(77);
    auto [sb, gb] = env.reset(77);
    CHECK((ga - gb).norm() == 0.0);
    for (int t = 0; t < 50; ++t) {
      const StepResult ra = env.step(sa, random_action(actions_a));
      const StepResult rb = env.step(sb, random_action(actions_b));
      sa = ra.state;
      sb = rb.state;
      CHECK((env.observe(sa) - env.observe(sb)).norm() == 0.0);
    }
  }
}

TEST_CASE("containment and relative-coordinate invariants hold under random play") {
  for (EnvKind kind : {EnvKind::maze, EnvKind::pick_place, EnvKind::bin}) {
    Environment env(kind, 21);
    Rng rng(4);
    auto [state, goal] = env.reset(1);
    for (int t = 0; t < 400; ++t) {
      state = env.step(state, random_action(rng)).state;
      const Workspace& ws = env.workspace();
      CHECK(state.gripper_pos.x() >= 0.0);
      CHECK(state.gripper_pos.x() <= ws.x_max);
      CHECK(state.gripper_pos.y() >= 0.0);
      CHECK(state.gripper_pos.y() <= ws.y_max);
      CHECK(state.gripper_pos.z() >= ws.table_height);
      CHECK(state.gripper_pos.z() <= ws.max_height);
      if (kind == EnvKind::maze) {
        CHECK_FALSE(env.in_wall(state.gripper_pos));
        CHECK(state.gripper_pos.z() == 0.42);
      } else {
        const Vec obs = env.observe(state);
        // q = o - dx at all times
        CHECK((obs.segment<3>(6) - (obs.segment<3>(3) - obs.head<3>())).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("observation round trips through state_from_obs") {
  for (EnvKind kind : {EnvKind::maze, EnvKind::pick_place, EnvKind::bin}) {
    Environment env(kind, 2);
    Rng rng(5);
    auto [state, goal] = env.reset(8);
    for (int t = 0; t < 30; ++t) state = env.step(state, random_action(rng)).state;
    const Vec obs = env.observe(state);
    const EnvState back = env.state_from_obs(obs);
    CHECK((env.observe(back) - obs).norm() == 0.0);
    // Reconstructed states continue identically under the same actions.
    EnvState a = state, b = back;
    for (int t = 0; t < 20; ++t) {
      const Vec4 act = random_action(rng);
      a = env.step(a, act).state;
      b = env.step(b, act).state;
      CHECK((env.observe(a) - env.observe(b)).norm() == 0.0);
    }
  }
}

TEST_CASE("grasped objects follow the gripper and drop on release") {
  Environment env(EnvKind::pick_place, 5);
  auto [state, goal] = env.reset(5);
  // Teleport the gripper onto the object and close.
  state.gripper_pos = state.object_pos;
  StepResult r = env.step(state, action(0.5, 0.5, 0.5, 0.0));
  CHECK(r.state.attached);
  // Lift: the object moves with the gripper.
  r = env.step(r.state, action(0.5, 0.5, 1.0, 0.0));
  CHECK(r.state.attached);
  CHECK((r.state.object_pos - r.state.gripper_pos).norm() == 0.0);
  CHECK(r.state.object_pos.z() > 0.42);
  // Open: the object falls back to the table.
  r = env.step(r.state, action(0.5, 0.5, 0.5, 1.0));
  CHECK_FALSE(r.state.attached);
  CHECK(r.state.object_pos.z() == doctest::Approx(0.42));
}

TEST_CASE("scripted demos succeed and replay bit-exactly") {
  for (EnvKind kind : {EnvKind::pick_place, EnvKind::bin}) {
    Environment env(kind, 1);
    const auto demo = scripted_demo(env, 1);
    REQUIRE_FALSE(demo.empty());
    CHECK(demo.back().env_reward == 0.0);
    CHECK(demo.back().terminal);

    // Replaying the stored actions reproduces the stored states.
    Environment sim = env;
    EnvState state = sim.reset(1).first;
    for (const PrimitiveTransition& t : demo) {
      CHECK((sim.observe(state).cast<float>() - t.s).norm() == 0.0f);
      state = sim.step(state, t.a.cast<double>()).state;
      CHECK((sim.observe(state).cast<float>() - t.s_next).norm() == 0.0f);
    }
  }
}

TEST_CASE("no demonstration exists for the maze task") {
  Environment env(EnvKind::maze, 1);
  CHECK_THROWS_AS(scripted_demo(env, 1), ConfigError);
}

TEST_CASE("demo determinism across calls") {
  Environment env(EnvKind::pick_place, 4);
  const auto a = scripted_demo(env, 9);
  const auto b = scripted_demo(env, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].s - b[i].s).norm() == 0.0f);
    CHECK((a[i].a - b[i].a).norm() == 0.0f);
  }
}
