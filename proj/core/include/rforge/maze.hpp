#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rforge/core.hpp"

namespace rforge::maze {

using CellPair = std::pair<Cell, Cell>;

// A perfect maze on an n x n grid: the corridor graph is a spanning tree
// (exactly n^2 - 1 corridors, connected, acyclic).
struct Maze {
  int n = 0;
  std::vector<CellPair> corridors;  // normalized (a < b), sorted
  Cell start{};
  Cell goal{};

  bool has_corridor(Cell a, Cell b) const;  // binary search over corridors
};

// Per-cell open-direction bitmask, bit order U,D,L,R. Index row*n+col.
std::vector<uint8_t> open_mask(const Maze& m);

// Normalizes a corridor to (min, max) cell order.
CellPair make_corridor(Cell a, Cell b);

// Carves a spanning tree of the n x n grid graph by iterative DFS starting
// at (0,0), picking among unvisited neighbors with rng. Endpoints are left
// unset. n must be >= 2.
Maze carve_maze(int n, Rng& rng);

// Two distinct cells, uniform without replacement.
std::pair<Cell, Cell> sample_endpoints(const Maze& m, Rng& rng);

// The unique start->goal corridor path (BFS with U,D,L,R expansion).
// Throws std::logic_error if the corridor graph does not connect them.
GridPath bfs_shortest_path(const Maze& m);

}  // namespace rforge::maze
