#pragma once

#include <array>
#include <cstdint>

#include "lgr2/types.hpp"

namespace lgr2 {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell& a, const Cell& b) { return a.x == b.x && a.y == b.y; }
};

// Four-room maze on a W x H grid. Border cells are walls; one interior
// wall column and one interior wall row split the grid into four rooms,
// connected by exactly four gate cells (one per wall segment).
//
// Coordinates: x is the column (left to right), y is the row (bottom to
// top). Cell (i, j) covers the square [i, i+1) x [j, j+1) in world units
// scaled by cell_size. The gripper starts in cell (1, 3).
struct MazeSpec {
  int width = 10;
  int height = 10;
  int wall_col = 5;
  int wall_row = 5;
  std::array<Cell, 4> gates{};  // below-wall_row gate, above, left-of-wall_col, right
  double cell_size = 1.0;
  double table_height = 0.42;

  static constexpr Cell kStartCell{1, 3};
};

// Randomly generated maze with W, H drawn from [10, 20]. Identical seeds
// yield identical specs. Rejection-samples until the start cell is free.
MazeSpec generate_maze(std::uint64_t rng_seed);

// Same construction with the grid dimensions pinned (walls and gates stay
// seed-random). Used by run configs that fix the maze size.
MazeSpec generate_maze_sized(int width, int height, std::uint64_t rng_seed);

bool is_wall(const MazeSpec& m, int cx, int cy);
bool is_gate(const MazeSpec& m, int cx, int cy);

// Cell containing a world-space position.
Cell cell_of(const MazeSpec& m, double wx, double wy);

Vec3 cell_center(const MazeSpec& m, const Cell& c);

// Flattened W*H occupancy (1 = wall), row-major with index y * width + x.
Vec occupancy(const MazeSpec& m);

}  // namespace lgr2
