#include "rforge/trajectory.hpp"

#include <algorithm>
#include <charconv>

namespace rforge::traj {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

int parse_int(std::string_view token, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ReplayError(std::string("bad ") + what + " token: '" + std::string(token) + "'");
  }
  return value;
}

// prefix sizes first, first + stride, ..., capped at last which is always
// included
std::vector<int> stride_prefixes(int first, int last, int stride) {
  std::vector<int> sizes;
  for (int k = first; k < last; k += stride) sizes.push_back(k);
  sizes.push_back(last);
  return sizes;
}

}  // namespace

int Trajectory::total_units() const {
  switch (kind) {
    case TaskKind::Maze:
    case TaskKind::Vsp: return static_cast<int>(path_cells.size());
    case TaskKind::Tsp: return static_cast<int>(tour_order.size());
    case TaskKind::Sudoku: return static_cast<int>(fills.size());
  }
  return 0;
}

Verdict validate_trajectory(const Trajectory& t) {
  if (t.prefix_sizes.empty()) return {false, 0, "empty state list"};
  if (t.stride < 1) return {false, 0, "stride must be >= 1"};
  const int total = t.total_units();
  for (size_t i = 0; i < t.prefix_sizes.size(); ++i) {
    const int size = t.prefix_sizes[i];
    if (size < 0 || size > total) {
      return {false, static_cast<int>(i), "prefix size out of range"};
    }
    if (i > 0) {
      const int grow = size - t.prefix_sizes[i - 1];
      const bool final_remainder = (i + 1 == t.prefix_sizes.size() && grow > 0 && grow <= t.stride);
      if (grow != t.stride && !final_remainder) {
        return {false, static_cast<int>(i),
                grow == 0 ? "duplicated state" : "prefix growth != stride"};
      }
    }
  }
  if (t.prefix_sizes.back() != total) {
    return {false, static_cast<int>(t.prefix_sizes.size()) - 1,
            "last state is not the complete solution"};
  }
  return {};
}

std::vector<Direction> parse_moves(std::string_view text) {
  std::vector<Direction> moves;
  if (text.empty()) return moves;
  for (std::string_view token : split(text, ',')) {
    if (token.size() != 1) throw ReplayError("bad move token: '" + std::string(token) + "'");
    try {
      moves.push_back(direction_from_token(token[0]));
    } catch (const std::invalid_argument& e) {
      throw ReplayError(e.what());
    }
  }
  return moves;
}

std::vector<int> parse_tour_text(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.empty()) throw ReplayError("empty tour text");
  if (parts.back() == "close") parts.pop_back();
  std::vector<int> order;
  order.reserve(parts.size());
  for (std::string_view token : parts) order.push_back(parse_int(token, "city index"));
  return order;
}

std::vector<Fill> parse_sudoku_fills(std::string_view text) {
  std::vector<Fill> fills;
  if (text.empty()) return fills;
  for (std::string_view triple : split(text, ';')) {
    const size_t eq = triple.find('=');
    if (eq == std::string_view::npos) {
      throw ReplayError("bad fill triple: '" + std::string(triple) + "'");
    }
    const auto rc = split(triple.substr(0, eq), ',');
    if (rc.size() != 2) throw ReplayError("bad fill triple: '" + std::string(triple) + "'");
    fills.push_back({{parse_int(rc[0], "row"), parse_int(rc[1], "col")},
                     parse_int(triple.substr(eq + 1), "digit")});
  }
  return fills;
}

std::string moves_to_text(const std::vector<Direction>& moves) {
  std::string out;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ',';
    out += direction_token(moves[i]);
  }
  return out;
}

std::string tour_to_text(const std::vector<int>& order) {
  std::string out;
  for (int idx : order) {
    out += std::to_string(idx);
    out += ',';
  }
  out += "close";
  return out;
}

std::string fills_to_text(const std::vector<Fill>& fills) {
  std::string out;
  for (size_t i = 0; i < fills.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(fills[i].cell.row) + "," + std::to_string(fills[i].cell.col) +
           "=" + std::to_string(fills[i].digit);
  }
  return out;
}

std::vector<Cell> replay_moves(Cell start, std::string_view text, int n) {
  std::vector<Cell> cells{start};
  for (Direction d : parse_moves(text)) {
    const Cell next = step(cells.back(), d);
    if (next.row < 0 || next.col < 0 || next.row >= n || next.col >= n) {
      throw ReplayError("move leaves the grid at " + cell_to_string(next));
    }
    cells.push_back(next);
  }
  return cells;
}

sudoku::SudokuGrid replay_sudoku(const sudoku::SudokuGrid& puzzle, std::string_view text) {
  sudoku::SudokuGrid grid = puzzle;
  for (const Fill& f : parse_sudoku_fills(text)) {
    if (f.cell.row < 0 || f.cell.row > 8 || f.cell.col < 0 || f.cell.col > 8) {
      throw ReplayError("fill outside the grid at " + cell_to_string(f.cell));
    }
    if (f.digit < 1 || f.digit > 9) {
      throw ReplayError("fill digit out of range: " + std::to_string(f.digit));
    }
    if (grid.at(f.cell.row, f.cell.col) != sudoku::kEmpty) {
      throw ReplayError("fill targets non-empty cell " + cell_to_string(f.cell));
    }
    grid.set(f.cell.row, f.cell.col, static_cast<uint8_t>(f.digit));
  }
  return grid;
}

Trajectory maze_trajectory(const maze::Maze& m, const GridPath& path, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (path.cells.empty() || path.cells.front() != m.start || path.cells.back() != m.goal) {
    throw std::invalid_argument("path does not span the maze endpoints");
  }
  for (size_t i = 0; i + 1 < path.cells.size(); ++i) {
    if (!m.has_corridor(path.cells[i], path.cells[i + 1])) {
      throw std::invalid_argument("path crosses a missing corridor");
    }
  }
  Trajectory t;
  t.kind = TaskKind::Maze;
  t.stride = stride;
  t.path_cells = path.cells;
  t.prefix_sizes = stride_prefixes(1, static_cast<int>(path.cells.size()), stride);
  t.reasoning_text = path.move_string();
  return t;
}

Trajectory tsp_trajectory(const tsp::CityLayout& layout, const tsp::Tour& tour, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  const int n = static_cast<int>(layout.cities.size());
  std::vector<char> seen(n, 0);
  if (static_cast<int>(tour.order.size()) != n || tour.order.empty() || tour.order[0] != 0) {
    throw std::invalid_argument("tour is not a permutation anchored at city 0");
  }
  for (int idx : tour.order) {
    if (idx < 0 || idx >= n || seen[idx]) {
      throw std::invalid_argument("tour is not a permutation anchored at city 0");
    }
    seen[idx] = 1;
  }
  Trajectory t;
  t.kind = TaskKind::Tsp;
  t.stride = stride;
  t.tour_order = tour.order;
  t.prefix_sizes = stride_prefixes(1, n, stride);
  t.reasoning_text = tour_to_text(tour.order);
  return t;
}

Trajectory sudoku_trajectory(const sudoku::SudokuInstance& inst, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  Trajectory t;
  t.kind = TaskKind::Sudoku;
  t.stride = stride;
  t.sudoku_puzzle = inst.puzzle;
  for (Cell hole : inst.holes()) {
    t.fills.push_back({hole, inst.solution.at(hole.row, hole.col)});
  }
  t.prefix_sizes = stride_prefixes(0, static_cast<int>(t.fills.size()), stride);
  t.reasoning_text = fills_to_text(t.fills);
  return t;
}

Trajectory vsp_trajectory(const vsp::HazardMap& map, const GridPath& path, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (path.cells.empty() || path.cells.front() != map.start || path.cells.back() != map.goal) {
    throw std::invalid_argument("path does not span the map endpoints");
  }
  for (Cell c : path.cells) {
    if (c.row < 0 || c.col < 0 || c.row >= map.n || c.col >= map.n || !map.is_safe(c)) {
      throw std::invalid_argument("path touches a hole or leaves the map");
    }
  }
  Trajectory t;
  t.kind = TaskKind::Vsp;
  t.stride = stride;
  t.path_cells = path.cells;
  t.prefix_sizes = stride_prefixes(1, static_cast<int>(path.cells.size()), stride);
  t.reasoning_text = path.move_string();
  return t;
}

}  // namespace rforge::traj
