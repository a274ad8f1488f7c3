#pragma once

#include <span>

#include "rforge/core.hpp"
#include "rforge/maze.hpp"
#include "rforge/png_io.hpp"
#include "rforge/sudoku.hpp"
#include "rforge/trajectory.hpp"
#include "rforge/tsp.hpp"
#include "rforge/vsp.hpp"

namespace rforge::render {

inline constexpr int kImageSize = 512;

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Fixed palette; every rendered pixel uses one of these exact values. The
// numeric anchors are the decode contract. wall/line and clue glyphs share
// ink; the path line and filled-digit glyphs share red.
namespace palette {
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kInk{0, 0, 0};          // walls, grid lines, clue digits, city dots
inline constexpr Rgb kPathRed{220, 30, 30};  // path lines, filled digits
inline constexpr Rgb kGreen{30, 180, 60};    // current endpoint
inline constexpr Rgb kYellow{240, 200, 30};  // start
inline constexpr Rgb kBlue{40, 90, 220};     // goal
inline constexpr Rgb kHoleDark{25, 40, 90};
inline constexpr Rgb kSafeLight{200, 225, 245};

inline constexpr Rgb kAll[8] = {kBackground, kInk,    kPathRed,  kGreen,
                                kYellow,     kBlue,   kHoleDark, kSafeLight};
}  // namespace palette

// Published raster geometry for an n x n grid: cell_px = 512/n, grid
// centered with equal margins. Decode relies on these exact values.
struct GridGeometry {
  int n = 0;
  int cell_px = 0;
  int margin = 0;

  int center_x(Cell c) const { return margin + c.col * cell_px + cell_px / 2; }
  int center_y(Cell c) const { return margin + c.row * cell_px + cell_px / 2; }
};

GridGeometry grid_geometry(int n);

// Stroke widths and marker radii, all derived from cell size.
int wall_thickness(int cell_px);            // max(2, cell_px/10)
int path_line_width(int cell_px);           // max(2, cell_px/6)
int endpoint_dot_radius(int cell_px);       // cell_px/3
int sudoku_glyph_scale(int cell_px);        // max(1, cell_px/10)

inline constexpr int kCityRadius = 6;
inline constexpr int kTspTipRadius = 9;
inline constexpr int kTspLineWidth = 4;
inline constexpr int kSudokuThinLine = 2;
inline constexpr int kSudokuThickLine = 5;

// 5x7 digit bitmaps for '1'..'9'; row-major strings of '.'/'X'.
std::span<const char* const> digit_glyphs();

// State renderers. `prefix` is the leading slice of the ground-truth
// solution; an empty prefix renders the bare puzzle (the dataset's
// input.png).
RasterImage render_maze_state(const maze::Maze& m, std::span<const Cell> prefix);
RasterImage render_tsp_state(const tsp::CityLayout& layout, std::span<const int> prefix);
RasterImage render_vsp_state(const vsp::HazardMap& map, std::span<const Cell> prefix);
// First `filled` holes (row-major) carry their solution digits in red.
RasterImage render_sudoku_state(const sudoku::SudokuInstance& inst, int filled);

}  // namespace rforge::render
