#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rforge/core.hpp"
#include "rforge/maze.hpp"
#include "rforge/sudoku.hpp"
#include "rforge/tsp.hpp"
#include "rforge/vsp.hpp"

namespace rforge::traj {

struct Fill {
  Cell cell;
  int digit = 0;
  friend bool operator==(const Fill&, const Fill&) = default;
};

// Step-by-step reasoning trace shared by all four tasks. The full solution
// sequence is stored once; state k exposes its first prefix_sizes[k] units
// (cells for Maze/VSP, cities for TSP, filled holes for Sudoku). Prefixes
// grow by `stride` units per state (1 canonically) and the last state is
// always the complete solution.
struct Trajectory {
  TaskKind kind{};
  int stride = 1;
  std::vector<int> prefix_sizes;

  std::vector<Cell> path_cells;      // Maze, VSP
  std::vector<int> tour_order;       // TSP
  std::vector<Fill> fills;           // Sudoku, row-major hole order
  sudoku::SudokuGrid sudoku_puzzle;  // Sudoku initial state

  std::string reasoning_text;

  int num_states() const { return static_cast<int>(prefix_sizes.size()); }
  int total_units() const;
};

struct Verdict {
  bool valid = true;
  int violation_index = -1;
  std::string reason;
};

// Monotone one-stride prefix growth and final-state completeness.
Verdict validate_trajectory(const Trajectory& t);

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// reasoning_text grammars:
//   Maze/VSP : dir ("," dir)*            e.g. "D,R,R,U"
//   TSP      : idx ("," idx)* ",close"   e.g. "0,3,1,2,close"
//   Sudoku   : triple (";" triple)*      triple = "r,c=v", 0-based
std::vector<Direction> parse_moves(std::string_view text);
std::vector<int> parse_tour_text(std::string_view text);
std::vector<Fill> parse_sudoku_fills(std::string_view text);

std::string moves_to_text(const std::vector<Direction>& moves);
std::string tour_to_text(const std::vector<int>& order);
std::string fills_to_text(const std::vector<Fill>& fills);

// Replays move tokens from `start` on an n x n grid. Bounds-checked only;
// wall/hole legality is the metrics module's concern.
std::vector<Cell> replay_moves(Cell start, std::string_view text, int n);

// Applies "r,c=v" fills to the puzzle. Filling a non-empty cell or touching
// an out-of-range coordinate is a replay error.
sudoku::SudokuGrid replay_sudoku(const sudoku::SudokuGrid& puzzle, std::string_view text);

// Trajectory builders (stride >= 1; the final state is always included).
Trajectory maze_trajectory(const maze::Maze& m, const GridPath& path, int stride = 1);
Trajectory tsp_trajectory(const tsp::CityLayout& layout, const tsp::Tour& tour, int stride = 1);
Trajectory sudoku_trajectory(const sudoku::SudokuInstance& inst, int stride = 1);
Trajectory vsp_trajectory(const vsp::HazardMap& map, const GridPath& path, int stride = 1);

}  // namespace rforge::traj
