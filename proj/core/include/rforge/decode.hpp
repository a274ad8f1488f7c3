#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "rforge/core.hpp"
#include "rforge/maze.hpp"
#include "rforge/render.hpp"
#include "rforge/sudoku.hpp"
#include "rforge/tsp.hpp"
#include "rforge/vsp.hpp"

namespace rforge::decode {

enum class PaletteColor : uint8_t {
  Background,
  Ink,
  PathRed,
  Green,
  Yellow,
  Blue,
  HoleDark,
  SafeLight,
  Unknown,
};

// Separates the palette's >= 40-channel-distance colors with margin.
inline constexpr int kClassifyThreshold = 60;

// Nearest palette color by Euclidean RGB distance, Unknown beyond the
// threshold.
PaletteColor classify_pixel(uint8_t r, uint8_t g, uint8_t b);

struct DecodeAmbiguous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Recovers the drawn path from a canonical rendering by sampling cell
// centers and corridor/safe edge midpoints, then walking the red graph from
// the start cell. Throws DecodeAmbiguous unless that graph is a simple path
// anchored at the start. Only the puzzle definition is consulted, never the
// ground-truth solution.
GridPath decode_grid_path(const render::RasterImage& img, const maze::Maze& m);
GridPath decode_grid_path(const render::RasterImage& img, const vsp::HazardMap& map);

// Recovers the closed tour from a canonical rendering given the city
// coordinates. Red edges are detected by sampling along each city pair
// (skipping points hidden under city/endpoint markers); the tour is the
// unique Hamiltonian cycle of that edge set, canonicalized as in the solver.
std::vector<int> decode_tour(const render::RasterImage& img, const tsp::CityLayout& layout);

struct DecodedSudoku {
  sudoku::SudokuGrid grid;
  std::array<bool, 81> filled_red{};  // true where the glyph rendered red
};

// Template-matches every cell's glyph box against the built-in digit
// bitmaps. A non-empty cell that matches nothing is DecodeAmbiguous.
DecodedSudoku decode_sudoku(const render::RasterImage& img);

}  // namespace rforge::decode
