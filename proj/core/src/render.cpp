#include "rforge/render.hpp"

#include <algorithm>
#include <cmath>

namespace rforge::render {

GridGeometry grid_geometry(int n) {
  if (n < 1 || n > kImageSize) throw std::invalid_argument("grid dimension out of range");
  GridGeometry g;
  g.n = n;
  g.cell_px = kImageSize / n;
  g.margin = (kImageSize - n * g.cell_px) / 2;
  return g;
}

int wall_thickness(int cell_px) { return std::max(2, cell_px / 10); }
int path_line_width(int cell_px) { return std::max(2, cell_px / 6); }
int endpoint_dot_radius(int cell_px) { return cell_px / 3; }
int sudoku_glyph_scale(int cell_px) { return std::max(1, cell_px / 10); }

namespace {

using palette::kBackground;
using palette::kBlue;
using palette::kGreen;
using palette::kHoleDark;
using palette::kInk;
using palette::kPathRed;
using palette::kSafeLight;
using palette::kYellow;

void fill_rect(RasterImage& img, int x0, int y0, int w, int h, Rgb c) {
  const int xa = std::max(0, x0);
  const int ya = std::max(0, y0);
  const int xb = std::min(img.width, x0 + w);
  const int yb = std::min(img.height, y0 + h);
  for (int y = ya; y < yb; ++y) {
    uint8_t* p = img.at(xa, y);
    for (int x = xa; x < xb; ++x) {
      p[0] = c.r;
      p[1] = c.g;
      p[2] = c.b;
      p += 3;
    }
  }
}

void fill_disc(RasterImage& img, int cx, int cy, int r, Rgb c) {
  const int r2 = r * r;
  for (int dy = -r; dy <= r; ++dy) {
    const int y = cy + dy;
    if (y < 0 || y >= img.height) continue;
    for (int dx = -r; dx <= r; ++dx) {
      const int x = cx + dx;
      if (x < 0 || x >= img.width) continue;
      if (dx * dx + dy * dy <= r2) {
        uint8_t* p = img.at(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
      }
    }
  }
}

// Axis-aligned stroke between two points (used for grid paths): the band of
// width w centered on the segment, inclusive of both end pixels.
void draw_axis_segment(RasterImage& img, int x0, int y0, int x1, int y1, int w, Rgb c) {
  const int half = w / 2;
  if (y0 == y1) {
    const int xa = std::min(x0, x1);
    const int xb = std::max(x0, x1);
    fill_rect(img, xa, y0 - half, xb - xa + 1, w, c);
  } else if (x0 == x1) {
    const int ya = std::min(y0, y1);
    const int yb = std::max(y0, y1);
    fill_rect(img, x0 - half, ya, w, yb - ya + 1, c);
  } else {
    throw std::invalid_argument("segment is not axis-aligned");
  }
}

// Free-angle stroke for TSP edges: pixels whose center lies within w/2 of
// the segment. Iteration walks the major axis so cost stays O(len * w).
void draw_segment(RasterImage& img, int x0, int y0, int x1, int y1, int w, Rgb c) {
  const double half = w / 2.0;
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  const auto near_segment = [&](int px, int py) {
    double t = len2 > 0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = x0 + t * dx - px;
    const double ey = y0 + t * dy - py;
    return ex * ex + ey * ey <= half * half;
  };
  const int pad = w + 1;
  if (std::abs(dx) >= std::abs(dy)) {
    const int xa = std::min(x0, x1), xb = std::max(x0, x1);
    for (int x = xa - pad; x <= xb + pad; ++x) {
      if (x < 0 || x >= img.width) continue;
      const double yc = dx != 0 ? y0 + (x - x0) * dy / dx : y0;
      const int ya = static_cast<int>(std::floor(yc)) - pad;
      const int yb2 = static_cast<int>(std::ceil(yc)) + pad;
      for (int y = ya; y <= yb2; ++y) {
        if (y < 0 || y >= img.height) continue;
        if (near_segment(x, y)) {
          uint8_t* p = img.at(x, y);
          p[0] = c.r;
          p[1] = c.g;
          p[2] = c.b;
        }
      }
    }
  } else {
    const int ya = std::min(y0, y1), yb = std::max(y0, y1);
    for (int y = ya - pad; y <= yb + pad; ++y) {
      if (y < 0 || y >= img.height) continue;
      const double xc = dy != 0 ? x0 + (y - y0) * dx / dy : x0;
      const int xa = static_cast<int>(std::floor(xc)) - pad;
      const int xb2 = static_cast<int>(std::ceil(xc)) + pad;
      for (int x = xa; x <= xb2; ++x) {
        if (x < 0 || x >= img.width) continue;
        if (near_segment(x, y)) {
          uint8_t* p = img.at(x, y);
          p[0] = c.r;
          p[1] = c.g;
          p[2] = c.b;
        }
      }
    }
  }
}

const char* const kGlyphs[9] = {
    // 1
    "..X.."
    ".XX.."
    "..X.."
    "..X.."
    "..X.."
    "..X.."
    ".XXX.",
    // 2
    ".XXX."
    "X...X"
    "....X"
    "...X."
    "..X.."
    ".X..."
    "XXXXX",
    // 3
    ".XXX."
    "X...X"
    "....X"
    "..XX."
    "....X"
    "X...X"
    ".XXX.",
    // 4
    "...X."
    "..XX."
    ".X.X."
    "X..X."
    "XXXXX"
    "...X."
    "...X.",
    // 5
    "XXXXX"
    "X...."
    "XXXX."
    "....X"
    "....X"
    "X...X"
    ".XXX.",
    // 6
    ".XXX."
    "X...."
    "XXXX."
    "X...X"
    "X...X"
    "X...X"
    ".XXX.",
    // 7
    "XXXXX"
    "....X"
    "...X."
    "..X.."
    "..X.."
    "..X.."
    "..X..",
    // 8
    ".XXX."
    "X...X"
    "X...X"
    ".XXX."
    "X...X"
    "X...X"
    ".XXX.",
    // 9
    ".XXX."
    "X...X"
    "X...X"
    ".XXXX"
    "....X"
    "....X"
    ".XXX.",
};

void draw_glyph(RasterImage& img, int digit, int x0, int y0, int scale, Rgb c) {
  const char* bits = kGlyphs[digit - 1];
  for (int gy = 0; gy < 7; ++gy) {
    for (int gx = 0; gx < 5; ++gx) {
      if (bits[gy * 5 + gx] == 'X') {
        fill_rect(img, x0 + gx * scale, y0 + gy * scale, scale, scale, c);
      }
    }
  }
}

void draw_path_overlay(RasterImage& img, const GridGeometry& g, std::span<const Cell> prefix,
                       Cell start, Cell goal) {
  const int lw = path_line_width(g.cell_px);
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    draw_axis_segment(img, g.center_x(prefix[i]), g.center_y(prefix[i]),
                      g.center_x(prefix[i + 1]), g.center_y(prefix[i + 1]), lw, kPathRed);
  }
  const int r = endpoint_dot_radius(g.cell_px);
  fill_disc(img, g.center_x(start), g.center_y(start), r, kYellow);
  fill_disc(img, g.center_x(goal), g.center_y(goal), r, kBlue);
  if (!prefix.empty()) {
    fill_disc(img, g.center_x(prefix.back()), g.center_y(prefix.back()), r, kGreen);
  }
}

}  // namespace

std::span<const char* const> digit_glyphs() { return kGlyphs; }

RasterImage render_maze_state(const maze::Maze& m, std::span<const Cell> prefix) {
  const GridGeometry g = grid_geometry(m.n);
  RasterImage img = RasterImage::filled(kImageSize, kImageSize, kBackground.r, kBackground.g,
                                        kBackground.b);
  const int t = wall_thickness(g.cell_px);
  const int half = t / 2;
  const int span = m.n * g.cell_px;

  // outer border
  fill_rect(img, g.margin - half, g.margin - half, span + t, t, kInk);
  fill_rect(img, g.margin - half, g.margin + span - half, span + t, t, kInk);
  fill_rect(img, g.margin - half, g.margin - half, t, span + t, kInk);
  fill_rect(img, g.margin + span - half, g.margin - half, t, span + t, kInk);

  // interior walls on corridor-absent edges
  for (int r = 0; r < m.n; ++r) {
    for (int c = 0; c < m.n; ++c) {
      const Cell cell{r, c};
      if (c + 1 < m.n && !m.has_corridor(cell, {r, c + 1})) {
        const int x = g.margin + (c + 1) * g.cell_px;
        fill_rect(img, x - half, g.margin + r * g.cell_px - half, t, g.cell_px + t, kInk);
      }
      if (r + 1 < m.n && !m.has_corridor(cell, {r + 1, c})) {
        const int y = g.margin + (r + 1) * g.cell_px;
        fill_rect(img, g.margin + c * g.cell_px - half, y - half, g.cell_px + t, t, kInk);
      }
    }
  }

  draw_path_overlay(img, g, prefix, m.start, m.goal);
  return img;
}

RasterImage render_vsp_state(const vsp::HazardMap& map, std::span<const Cell> prefix) {
  const GridGeometry g = grid_geometry(map.n);
  RasterImage img = RasterImage::filled(kImageSize, kImageSize, kBackground.r, kBackground.g,
                                        kBackground.b);
  for (int r = 0; r < map.n; ++r) {
    for (int c = 0; c < map.n; ++c) {
      const Rgb tile = map.is_safe({r, c}) ? kSafeLight : kHoleDark;
      fill_rect(img, g.margin + c * g.cell_px, g.margin + r * g.cell_px, g.cell_px, g.cell_px,
                tile);
    }
  }
  draw_path_overlay(img, g, prefix, map.start, map.goal);
  return img;
}

RasterImage render_tsp_state(const tsp::CityLayout& layout, std::span<const int> prefix) {
  RasterImage img = RasterImage::filled(kImageSize, kImageSize, kBackground.r, kBackground.g,
                                        kBackground.b);
  const auto& cities = layout.cities;
  const bool closed = !prefix.empty() && prefix.size() == cities.size();

  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    const auto& a = cities[prefix[i]];
    const auto& b = cities[prefix[i + 1]];
    draw_segment(img, a[0], a[1], b[0], b[1], kTspLineWidth, kPathRed);
  }
  if (closed) {
    const auto& a = cities[prefix.back()];
    const auto& b = cities[prefix.front()];
    draw_segment(img, a[0], a[1], b[0], b[1], kTspLineWidth, kPathRed);
  }

  for (const auto& c : cities) fill_disc(img, c[0], c[1], kCityRadius, kInk);
  if (!prefix.empty()) {
    const auto& tip = cities[prefix.back()];
    fill_disc(img, tip[0], tip[1], kTspTipRadius, kGreen);
  }
  return img;
}

RasterImage render_sudoku_state(const sudoku::SudokuInstance& inst, int filled) {
  const GridGeometry g = grid_geometry(9);
  RasterImage img = RasterImage::filled(kImageSize, kImageSize, kBackground.r, kBackground.g,
                                        kBackground.b);
  const int span = 9 * g.cell_px;

  for (int i = 0; i <= 9; ++i) {
    const int t = (i % 3 == 0) ? kSudokuThickLine : kSudokuThinLine;
    const int half = t / 2;
    const int x = g.margin + i * g.cell_px;
    fill_rect(img, x - half, g.margin - kSudokuThickLine / 2, t, span + kSudokuThickLine, kInk);
    const int y = g.margin + i * g.cell_px;
    fill_rect(img, g.margin - kSudokuThickLine / 2, y - half, span + kSudokuThickLine, t, kInk);
  }

  const int scale = sudoku_glyph_scale(g.cell_px);
  const int gx_off = (g.cell_px - 5 * scale) / 2;
  const int gy_off = (g.cell_px - 7 * scale) / 2;
  const auto holes = inst.holes();
  if (filled < 0 || filled > static_cast<int>(holes.size())) {
    throw std::invalid_argument("filled count out of range");
  }

  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const uint8_t clue = inst.puzzle.at(r, c);
      if (clue == sudoku::kEmpty) continue;
      draw_glyph(img, clue, g.margin + c * g.cell_px + gx_off, g.margin + r * g.cell_px + gy_off,
                 scale, kInk);
    }
  }
  for (int k = 0; k < filled; ++k) {
    const Cell h = holes[k];
    draw_glyph(img, inst.solution.at(h.row, h.col), g.margin + h.col * g.cell_px + gx_off,
               g.margin + h.row * g.cell_px + gy_off, scale, kPathRed);
  }
  return img;
}

}  // namespace rforge::render
