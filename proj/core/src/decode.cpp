#include "rforge/decode.hpp"

#include <algorithm>
#include <cmath>

namespace rforge::decode {

namespace {

using render::GridGeometry;
using render::RasterImage;

PaletteColor classify_at(const RasterImage& img, int x, int y) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return PaletteColor::Unknown;
  const uint8_t* p = img.at(x, y);
  return classify_pixel(p[0], p[1], p[2]);
}

bool is_path_mark(PaletteColor c) {
  return c == PaletteColor::PathRed || c == PaletteColor::Green;
}

struct EdgeKey {
  Cell a, b;  // a < b
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

// Shared maze/VSP walk. `open(a, b)` limits candidate edges to the puzzle's
// traversable adjacencies.
template <typename OpenFn>
GridPath walk_red_graph(const RasterImage& img, int n, Cell start, OpenFn open) {
  const GridGeometry g = render::grid_geometry(n);

  std::vector<EdgeKey> red_edges;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Cell cell{r, c};
      if (c + 1 < n && open(cell, Cell{r, c + 1})) {
        const int mx = g.margin + (c + 1) * g.cell_px;
        const int my = g.center_y(cell);
        if (classify_at(img, mx, my) == PaletteColor::PathRed) {
          red_edges.push_back({cell, {r, c + 1}});
        }
      }
      if (r + 1 < n && open(cell, Cell{r + 1, c})) {
        const int mx = g.center_x(cell);
        const int my = g.margin + (r + 1) * g.cell_px;
        if (classify_at(img, mx, my) == PaletteColor::PathRed) {
          red_edges.push_back({cell, {r + 1, c}});
        }
      }
    }
  }

  const auto has_edge = [&](Cell a, Cell b) {
    const EdgeKey key = a < b ? EdgeKey{a, b} : EdgeKey{b, a};
    return std::find(red_edges.begin(), red_edges.end(), key) != red_edges.end();
  };

  if (red_edges.empty()) {
    // a lone green marker on the start cell is the zero-move state
    if (classify_at(img, g.center_x(start), g.center_y(start)) == PaletteColor::Green) {
      return path_from_cells({start});
    }
    throw DecodeAmbiguous("no start-adjacent path marking found");
  }

  std::vector<Cell> cells{start};
  std::vector<char> visited(static_cast<size_t>(n) * n, 0);
  visited[static_cast<size_t>(start.row) * n + start.col] = 1;
  size_t used_edges = 0;
  for (Cell cur = start;;) {
    Cell next{};
    int options = 0;
    for (Cell nb : neighbors(cur, n)) {
      if (visited[static_cast<size_t>(nb.row) * n + nb.col]) continue;
      if (has_edge(cur, nb)) {
        next = nb;
        ++options;
      }
    }
    if (options == 0) break;
    if (options > 1) throw DecodeAmbiguous("path branches at " + cell_to_string(cur));
    visited[static_cast<size_t>(next.row) * n + next.col] = 1;
    cells.push_back(next);
    ++used_edges;
    cur = next;
  }
  if (cells.size() == 1) {
    throw DecodeAmbiguous("no start-adjacent path marking found");
  }
  if (used_edges != red_edges.size()) {
    throw DecodeAmbiguous("path markings are not a single path from the start");
  }
  // every marked cell center must lie on the walked path
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (visited[static_cast<size_t>(r) * n + c]) continue;
      if (is_path_mark(classify_at(img, g.center_x({r, c}), g.center_y({r, c})))) {
        throw DecodeAmbiguous("stray path marking at " + cell_to_string({r, c}));
      }
    }
  }
  return path_from_cells(std::move(cells));
}

}  // namespace

PaletteColor classify_pixel(uint8_t r, uint8_t g, uint8_t b) {
  int best_index = -1;
  int64_t best_d2 = 0;
  for (int i = 0; i < 8; ++i) {
    const render::Rgb& p = render::palette::kAll[i];
    const int64_t dr = int(r) - p.r, dg = int(g) - p.g, db = int(b) - p.b;
    const int64_t d2 = dr * dr + dg * dg + db * db;
    if (best_index < 0 || d2 < best_d2) {
      best_index = i;
      best_d2 = d2;
    }
  }
  if (best_d2 > int64_t(kClassifyThreshold) * kClassifyThreshold) return PaletteColor::Unknown;
  return static_cast<PaletteColor>(best_index);
}

GridPath decode_grid_path(const render::RasterImage& img, const maze::Maze& m) {
  return walk_red_graph(img, m.n, m.start,
                        [&](Cell a, Cell b) { return m.has_corridor(a, b); });
}

GridPath decode_grid_path(const render::RasterImage& img, const vsp::HazardMap& map) {
  return walk_red_graph(img, map.n, map.start,
                        [&](Cell a, Cell b) { return map.is_safe(a) && map.is_safe(b); });
}

namespace {

// Counts Hamiltonian cycles (up to direction) in the red edge graph,
// stopping at 2. Records the first one found.
struct HamiltonianSearch {
  const std::vector<std::vector<int>>& adj;
  int n;
  std::vector<int> path;
  std::vector<char> used;
  std::vector<int> first_cycle;
  int found = 0;
  long budget = 200000;

  void run() {
    path = {0};
    used.assign(n, 0);
    used[0] = 1;
    dfs();
  }

  void dfs() {
    if (found >= 2 || --budget < 0) return;
    const int cur = path.back();
    if (static_cast<int>(path.size()) == n) {
      if (std::find(adj[cur].begin(), adj[cur].end(), 0) != adj[cur].end()) {
        // direction dedup: count each cycle once
        if (path[1] < path[n - 1]) {
          if (found == 0) first_cycle = path;
          ++found;
        }
      }
      return;
    }
    for (int nb : adj[cur]) {
      if (used[nb]) continue;
      used[nb] = 1;
      path.push_back(nb);
      dfs();
      path.pop_back();
      used[nb] = 0;
      if (found >= 2 || budget < 0) return;
    }
  }
};

}  // namespace

std::vector<int> decode_tour(const render::RasterImage& img, const tsp::CityLayout& layout) {
  const int n = static_cast<int>(layout.cities.size());
  if (n < 3) throw DecodeAmbiguous("layout has fewer than 3 cities");

  // Sample points hidden under a city or endpoint marker prove nothing.
  const int skip_r = std::max(render::kCityRadius, render::kTspTipRadius) + 2;
  const auto hidden = [&](double x, double y) {
    for (const auto& c : layout.cities) {
      const double dx = x - c[0], dy = y - c[1];
      if (dx * dx + dy * dy <= double(skip_r) * skip_r) return true;
    }
    return false;
  };

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = layout.cities[i];
      const auto& b = layout.cities[j];
      int usable = 0, red = 0;
      for (int k = 1; k <= 7; ++k) {
        const double t = k / 8.0;
        const double x = a[0] + t * (b[0] - a[0]);
        const double y = a[1] + t * (b[1] - a[1]);
        if (hidden(x, y)) continue;
        ++usable;
        if (classify_at(img, static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y))) ==
            PaletteColor::PathRed) {
          ++red;
        }
      }
      if (usable > 0 && red == usable) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (adj[i].size() < 2) {
      throw DecodeAmbiguous("city " + std::to_string(i) + " is not on a closed loop");
    }
    std::sort(adj[i].begin(), adj[i].end());
  }

  HamiltonianSearch search{adj, n, {}, {}, {}, 0, 200000};
  search.run();
  if (search.budget < 0) throw DecodeAmbiguous("tour extraction exceeded its search budget");
  if (search.found != 1) {
    throw DecodeAmbiguous(search.found == 0 ? "red edges contain no closed tour"
                                            : "red edges admit multiple tours");
  }

  std::vector<int> order = search.first_cycle;  // starts at 0, direction canonical
  return order;
}

DecodedSudoku decode_sudoku(const render::RasterImage& img) {
  const GridGeometry g = render::grid_geometry(9);
  const int scale = render::sudoku_glyph_scale(g.cell_px);
  const int gx_off = (g.cell_px - 5 * scale) / 2;
  const int gy_off = (g.cell_px - 7 * scale) / 2;
  const auto glyphs = render::digit_glyphs();

  DecodedSudoku out;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const int x0 = g.margin + c * g.cell_px + gx_off;
      const int y0 = g.margin + r * g.cell_px + gy_off;

      // binarize the glyph box: cells of the 5x7 bitmap, sampled at block
      // centers
      std::array<char, 35> on{};
      int on_count = 0, red_count = 0, ink_count = 0;
      for (int gy = 0; gy < 7; ++gy) {
        for (int gx = 0; gx < 5; ++gx) {
          const PaletteColor col =
              classify_at(img, x0 + gx * scale + scale / 2, y0 + gy * scale + scale / 2);
          if (col == PaletteColor::Ink || col == PaletteColor::PathRed) {
            on[gy * 5 + gx] = 1;
            ++on_count;
            col == PaletteColor::PathRed ? ++red_count : ++ink_count;
          }
        }
      }
      if (on_count == 0) {
        out.grid.set(r, c, sudoku::kEmpty);
        continue;
      }

      int best_digit = 0, best_diff = 36;
      for (int d = 1; d <= 9; ++d) {
        const char* bits = glyphs[d - 1];
        int diff = 0;
        for (int i = 0; i < 35; ++i) diff += (bits[i] == 'X') != (on[i] != 0);
        if (diff < best_diff) {
          best_diff = diff;
          best_digit = d;
        }
      }
      if (best_diff > 3) {  // tolerate a few boundary pixels, nothing more
        throw DecodeAmbiguous("unrecognized glyph at " + cell_to_string({r, c}));
      }
      out.grid.set(r, c, static_cast<uint8_t>(best_digit));
      out.filled_red[r * 9 + c] = red_count > ink_count;
    }
  }
  return out;
}

}  // namespace rforge::decode
