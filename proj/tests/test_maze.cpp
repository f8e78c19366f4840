#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgr2/maze.hpp"

using namespace lgr2;

namespace {

bool specs_equal(const MazeSpec& a, const MazeSpec& b) {
  if (a.width != b.width || a.height != b.height) return false;
  if (a.wall_col != b.wall_col || a.wall_row != b.wall_row) return false;
  for (int i = 0; i < 4; ++i)
    if (!(a.gates[i] == b.gates[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("identical seeds yield identical specs") {
  const MazeSpec a = generate_maze(7);
  const MazeSpec b = generate_maze(7);
  CHECK(specs_equal(a, b));
}

TEST_CASE("dimensions stay within the prompt's range") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MazeSpec m = generate_maze(seed);
    CHECK(m.width >= 10);
    CHECK(m.width <= 20);
    CHECK(m.height >= 10);
    CHECK(m.height <= 20);
  }
}

TEST_CASE("wall indices are strictly interior") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MazeSpec m = generate_maze(seed);
    CHECK(m.wall_col > 1);
    CHECK(m.wall_col < m.width - 2);
    CHECK(m.wall_row > 1);
    CHECK(m.wall_row < m.height - 2);
  }
}

TEST_CASE("exactly four gates, one per wall segment, all passable") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MazeSpec m = generate_maze(seed);
    // One on each vertical segment.
    CHECK(m.gates[0].x == m.wall_col);
    CHECK(m.gates[0].y >= 1);
    CHECK(m.gates[0].y <= m.wall_row - 1);
    CHECK(m.gates[1].x == m.wall_col);
    CHECK(m.gates[1].y >= m.wall_row + 1);
    CHECK(m.gates[1].y <= m.height - 2);
    // One on each horizontal segment.
    CHECK(m.gates[2].y == m.wall_row);
    CHECK(m.gates[2].x >= 1);
    CHECK(m.gates[2].x <= m.wall_col - 1);
    CHECK(m.gates[3].y == m.wall_row);
    CHECK(m.gates[3].x >= m.wall_col + 1);
    CHECK(m.gates[3].x <= m.width - 2);
    for (const Cell& g : m.gates) {
      CHECK(is_gate(m, g.x, g.y));
      CHECK_FALSE(is_wall(m, g.x, g.y));
    }
  }
}

TEST_CASE("start cell is never a wall or gate") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const MazeSpec m = generate_maze(seed);
    CHECK_FALSE(is_wall(m, MazeSpec::kStartCell.x, MazeSpec::kStartCell.y));
    CHECK_FALSE(is_gate(m, MazeSpec::kStartCell.x, MazeSpec::kStartCell.y));
  }
}

TEST_CASE("borders are walls, wall crossing cell stays blocked") {
  const MazeSpec m = generate_maze(3);
  for (int x = 0; x < m.width; ++x) {
    CHECK(is_wall(m, x, 0));
    CHECK(is_wall(m, x, m.height - 1));
  }
  for (int y = 0; y < m.height; ++y) {
    CHECK(is_wall(m, 0, y));
    CHECK(is_wall(m, m.width - 1, y));
  }
  CHECK(is_wall(m, m.wall_col, m.wall_row));
}

TEST_CASE("occupancy matches is_wall and uses row-major layout") {
  const MazeSpec m = generate_maze(11);
  const Vec occ = occupancy(m);
  REQUIRE(occ.size() == m.width * m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      CHECK(occ[y * m.width + x] == (is_wall(m, x, y) ? 1.0 : 0.0));
}

TEST_CASE("cell_of / cell_center round trip") {
  const MazeSpec m = generate_maze_sized(10, 12, 5);
  const Cell c{4, 7};
  const Vec3 center = cell_center(m, c);
  CHECK(cell_of(m, center.x(), center.y()) == c);
  CHECK(center.z() == doctest::Approx(0.42));
}

TEST_CASE("sized generation pins the dimensions and rejects bad ones") {
  const MazeSpec m = generate_maze_sized(10, 10, 42);
  CHECK(m.width == 10);
  CHECK(m.height == 10);
  CHECK_THROWS_AS(generate_maze_sized(5, 10, 0), ConfigError);
  CHECK_THROWS_AS(generate_maze_sized(10, 25, 0), ConfigError);
}
