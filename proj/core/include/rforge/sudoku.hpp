#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rforge/core.hpp"

namespace rforge::sudoku {

inline constexpr int kEmpty = 0;

// 9x9 grid, row-major; 0 marks an empty cell.
struct SudokuGrid {
  std::array<uint8_t, 81> cells{};

  uint8_t at(int row, int col) const { return cells[row * 9 + col]; }
  void set(int row, int col, uint8_t v) { cells[row * 9 + col] = v; }

  bool is_complete() const;
  // No row, column, or 3x3 block repeats a non-empty digit.
  bool is_valid() const;

  // 81 characters row-major, '0' for empty.
  std::string to_string() const;
  static SudokuGrid from_string(std::string_view text);  // throws std::invalid_argument

  friend bool operator==(const SudokuGrid&, const SudokuGrid&) = default;
};

struct SudokuInstance {
  SudokuGrid puzzle;
  SudokuGrid solution;
  int clue_count = 0;

  // Empty puzzle cells in row-major order.
  std::vector<Cell> holes() const;
};

// Digging ran out of removable cells (or revert budget) before reaching the
// clue target; callers restart from a fresh solution seed.
struct DiggingStuck : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complete valid grid by randomized backtracking: cells in row-major order,
// candidate digits shuffled once per cell up front.
SudokuGrid generate_solution(Rng& rng);

// Exact completion count truncated at `cap`, most-constrained empty cell
// first. A puzzle with conflicting givens counts 0.
int count_solutions(const SudokuGrid& puzzle, int cap);

// Removes cells one at a time in rng order, reverting any removal that
// breaks uniqueness, until clue_target clues remain.
SudokuInstance dig_holes(const SudokuGrid& solution, int clue_target, Rng& rng,
                         int max_attempts = 500);

}  // namespace rforge::sudoku
