#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rforge/core.hpp"

namespace rforge::vsp {

enum class Tile : uint8_t { Safe, Hole };

// FrozenLake-style hazard grid. Start and goal are always Safe and distinct,
// and a Safe 4-connected start->goal path exists by construction.
struct HazardMap {
  int n = 0;
  std::vector<Tile> tiles;  // row-major, n*n
  Cell start{};
  Cell goal{};

  Tile at(Cell c) const { return tiles[static_cast<size_t>(c.row) * n + c.col]; }
  bool is_safe(Cell c) const { return at(c) == Tile::Safe; }

  std::string tile_string() const;  // 'S'/'H' row-major
  static std::vector<Tile> tiles_from_string(std::string_view text, int n);
};

struct MapInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bernoulli(p_hole) tiles; endpoints uniform over Safe tiles without
// replacement; the whole map is resampled until a safe path exists.
HazardMap generate_map(int n, double p_hole, Rng& rng, int max_resamples = 1000);

// Shortest safe path with unit edge weights via Dijkstra relaxation
// d(v) = min{d(v), d(u) + w(u,v)}; ties broken by the fixed U,D,L,R
// expansion order and FIFO among equal keys.
GridPath dijkstra_safe_path(const HazardMap& map);

}  // namespace rforge::vsp
