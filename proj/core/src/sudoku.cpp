#include "rforge/sudoku.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace rforge::sudoku {

namespace {

inline int block_of(int row, int col) { return (row / 3) * 3 + col / 3; }

// Candidate bitmasks per unit; bit d set = digit d+1 used.
struct Masks {
  std::array<uint16_t, 9> rows{}, cols{}, blocks{};

  static Masks from(const SudokuGrid& g, bool* conflict) {
    Masks m;
    *conflict = false;
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 9; ++c) {
        const uint8_t v = g.at(r, c);
        if (v == kEmpty) continue;
        const uint16_t bit = uint16_t(1) << (v - 1);
        if ((m.rows[r] | m.cols[c] | m.blocks[block_of(r, c)]) & bit) {
          *conflict = true;
          return m;
        }
        m.rows[r] |= bit;
        m.cols[c] |= bit;
        m.blocks[block_of(r, c)] |= bit;
      }
    }
    return m;
  }

  uint16_t candidates(int r, int c) const {
    return uint16_t(0x1ff & ~(rows[r] | cols[c] | blocks[block_of(r, c)]));
  }
  void place(int r, int c, int d) {
    const uint16_t bit = uint16_t(1) << (d - 1);
    rows[r] |= bit;
    cols[c] |= bit;
    blocks[block_of(r, c)] |= bit;
  }
  void remove(int r, int c, int d) {
    const uint16_t bit = uint16_t(1) << (d - 1);
    rows[r] &= ~bit;
    cols[c] &= ~bit;
    blocks[block_of(r, c)] &= ~bit;
  }
};

struct Counter {
  SudokuGrid grid;
  Masks masks;
  int cap = 2;
  int found = 0;

  void run() {
    int best = -1;
    int best_count = 10;
    for (int i = 0; i < 81; ++i) {
      if (grid.cells[i] != kEmpty) continue;
      const int cnt = std::popcount(masks.candidates(i / 9, i % 9));
      if (cnt == 0) return;  // dead end
      if (cnt < best_count) {
        best_count = cnt;
        best = i;
        if (cnt == 1) break;
      }
    }
    if (best < 0) {
      ++found;
      return;
    }
    const int r = best / 9, c = best % 9;
    const uint16_t cands = masks.candidates(r, c);
    for (int d = 1; d <= 9; ++d) {
      if (!(cands & (uint16_t(1) << (d - 1)))) continue;
      grid.cells[best] = static_cast<uint8_t>(d);
      masks.place(r, c, d);
      run();
      masks.remove(r, c, d);
      grid.cells[best] = kEmpty;
      if (found >= cap) return;
    }
  }
};

}  // namespace

bool SudokuGrid::is_complete() const {
  return std::all_of(cells.begin(), cells.end(), [](uint8_t v) { return v != kEmpty; });
}

bool SudokuGrid::is_valid() const {
  bool conflict = false;
  Masks::from(*this, &conflict);
  return !conflict;
}

std::string SudokuGrid::to_string() const {
  std::string s(81, '0');
  for (int i = 0; i < 81; ++i) s[i] = static_cast<char>('0' + cells[i]);
  return s;
}

SudokuGrid SudokuGrid::from_string(std::string_view text) {
  if (text.size() != 81) throw std::invalid_argument("sudoku string must have 81 characters");
  SudokuGrid g;
  for (int i = 0; i < 81; ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') throw std::invalid_argument("sudoku string has non-digit characters");
    g.cells[i] = static_cast<uint8_t>(ch - '0');
  }
  return g;
}

std::vector<Cell> SudokuInstance::holes() const {
  std::vector<Cell> out;
  for (int i = 0; i < 81; ++i) {
    if (puzzle.cells[i] == kEmpty) out.push_back({i / 9, i % 9});
  }
  return out;
}

SudokuGrid generate_solution(Rng& rng) {
  // one shuffled candidate order per cell, drawn up front
  std::array<std::array<uint8_t, 9>, 81> orders;
  for (auto& o : orders) {
    std::vector<uint8_t> digits(9);
    std::iota(digits.begin(), digits.end(), uint8_t(1));
    rng.shuffle(digits);
    std::copy(digits.begin(), digits.end(), o.begin());
  }

  SudokuGrid grid;
  Masks masks;
  const auto solve = [&](auto&& self, int pos) -> bool {
    if (pos == 81) return true;
    const int r = pos / 9, c = pos % 9;
    const uint16_t cands = masks.candidates(r, c);
    for (uint8_t d : orders[pos]) {
      if (!(cands & (uint16_t(1) << (d - 1)))) continue;
      grid.cells[pos] = d;
      masks.place(r, c, d);
      if (self(self, pos + 1)) return true;
      masks.remove(r, c, d);
      grid.cells[pos] = kEmpty;
    }
    return false;
  };
  solve(solve, 0);
  return grid;
}

int count_solutions(const SudokuGrid& puzzle, int cap) {
  if (cap < 1) throw std::invalid_argument("count_solutions cap must be >= 1");
  bool conflict = false;
  Masks masks = Masks::from(puzzle, &conflict);
  if (conflict) return 0;
  Counter counter{puzzle, masks, cap, 0};
  counter.run();
  return counter.found;
}

SudokuInstance dig_holes(const SudokuGrid& solution, int clue_target, Rng& rng,
                         int max_attempts) {
  if (clue_target < 17 || clue_target > 81) {
    throw std::invalid_argument("clue target must be in [17, 81]");
  }

  SudokuGrid puzzle = solution;
  int clues = 81;
  int reverts = 0;

  std::vector<int> positions(81);
  std::iota(positions.begin(), positions.end(), 0);
  rng.shuffle(positions);

  for (int pos : positions) {
    if (clues == clue_target) break;
    const uint8_t v = puzzle.cells[pos];
    puzzle.cells[pos] = kEmpty;
    if (count_solutions(puzzle, 2) > 1) {
      puzzle.cells[pos] = v;
      if (++reverts > max_attempts) {
        throw DiggingStuck("revert budget exhausted at " + std::to_string(clues) + " clues");
      }
    } else {
      --clues;
    }
  }
  if (clues != clue_target) {
    throw DiggingStuck("no removable cells left at " + std::to_string(clues) + " clues");
  }

  return SudokuInstance{puzzle, solution, clues};
}

}  // namespace rforge::sudoku
