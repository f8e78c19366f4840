#include "lgr2/maze.hpp"

#include <cmath>

#include "lgr2/rng.hpp"

namespace lgr2 {

namespace {

MazeSpec sample_spec(int width, int height, Rng& rng) {
  MazeSpec m;
  m.width = width;
  m.height = height;
  // Interior wall indices, strictly inside (1, dim-2).
  m.wall_col = rng.range_int(2, width - 3);
  m.wall_row = rng.range_int(2, height - 3);
  // One gate per wall segment. Vertical wall segments run below and above
  // the wall row; horizontal segments run left and right of the wall col.
  m.gates[0] = Cell{m.wall_col, rng.range_int(1, m.wall_row - 1)};
  m.gates[1] = Cell{m.wall_col, rng.range_int(m.wall_row + 1, height - 2)};
  m.gates[2] = Cell{rng.range_int(1, m.wall_col - 1), m.wall_row};
  m.gates[3] = Cell{rng.range_int(m.wall_col + 1, width - 2), m.wall_row};
  return m;
}

bool start_free(const MazeSpec& m) {
  const Cell s = MazeSpec::kStartCell;
  return !is_wall(m, s.x, s.y) && !is_gate(m, s.x, s.y);
}

}  // namespace

MazeSpec generate_maze(std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  const int width = rng.range_int(10, 20);
  const int height = rng.range_int(10, 20);
  MazeSpec m = sample_spec(width, height, rng);
  while (!start_free(m)) m = sample_spec(width, height, rng);
  return m;
}

MazeSpec generate_maze_sized(int width, int height, std::uint64_t rng_seed) {
  if (width < 10 || width > 20 || height < 10 || height > 20)
    throw ConfigError("maze dimensions must lie in [10, 20]");
  Rng rng(rng_seed);
  MazeSpec m = sample_spec(width, height, rng);
  while (!start_free(m)) m = sample_spec(width, height, rng);
  return m;
}

bool is_wall(const MazeSpec& m, int cx, int cy) {
  if (cx < 0 || cy < 0 || cx >= m.width || cy >= m.height) return true;
  if (cx == 0 || cy == 0 || cx == m.width - 1 || cy == m.height - 1) return true;
  if (cx == m.wall_col || cy == m.wall_row) return !is_gate(m, cx, cy);
  return false;
}

bool is_gate(const MazeSpec& m, int cx, int cy) {
  for (const Cell& g : m.gates)
    if (g.x == cx && g.y == cy) return true;
  return false;
}

Cell cell_of(const MazeSpec& m, double wx, double wy) {
  return Cell{static_cast<int>(std::floor(wx / m.cell_size)),
              static_cast<int>(std::floor(wy / m.cell_size))};
}

Vec3 cell_center(const MazeSpec& m, const Cell& c) {
  return Vec3((c.x + 0.5) * m.cell_size, (c.y + 0.5) * m.cell_size, m.table_height);
}

Vec occupancy(const MazeSpec& m) {
  Vec occ(m.width * m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      occ[y * m.width + x] = is_wall(m, x, y) ? 1.0 : 0.0;
  return occ;
}

}  // namespace lgr2
