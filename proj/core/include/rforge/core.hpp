#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rforge {

// Grid coordinates. Row 0 is the top image row; Down increases row,
// Right increases col.
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Direction : uint8_t { Up, Down, Left, Right };

// Fixed expansion order used by every search in the project so that all
// solver outputs are deterministic.
inline constexpr Direction kDirectionOrder[4] = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

char direction_token(Direction d);                 // 'U','D','L','R'
Direction direction_from_token(char token);        // throws std::invalid_argument
Cell step(Cell c, Direction d);

// "(row,col)"
std::string cell_to_string(Cell c);
Cell cell_from_string(std::string_view text);      // throws std::invalid_argument

// In-bounds 4-neighbors of `c` in the fixed U,D,L,R order.
std::vector<Cell> neighbors(Cell c, int n);

// Token moving a to b; a and b must be 4-adjacent.
Direction direction_between(Cell a, Cell b);

enum class TaskKind : uint8_t { Maze, Tsp, Sudoku, Vsp };

std::string_view task_kind_name(TaskKind kind);    // "maze","tsp","sudoku","vsp"
TaskKind task_kind_from_name(std::string_view name);

// A path across a grid: consecutive cells are 4-adjacent and
// moves[i] == direction_between(cells[i], cells[i+1]).
struct GridPath {
  std::vector<Cell> cells;
  std::vector<Direction> moves;

  std::string move_string() const;   // "D,R,R,U"
  friend bool operator==(const GridPath&, const GridPath&) = default;
};

// Builds a GridPath from a cell sequence, deriving the move list.
GridPath path_from_cells(std::vector<Cell> cells);

struct SeedSpec {
  uint64_t master_seed = 0;
  std::string task_tag;
  uint64_t index = 0;
};

// Pure 64-bit mix over the canonical byte encoding
// LE64(master) || LE32(|tag|) || tag || LE64(index): FNV-1a folded through a
// splitmix-style finalizer.
uint64_t derive_seed(const SeedSpec& spec);

// Counter-based generator (splitmix64). Each instance owns its state, so
// generation parallelizes with bit-identical output. Distributions here are
// implementation-pinned; std::uniform_int_distribution is not portable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Unbiased integer in [0, bound). bound must be > 0.
  uint64_t below(uint64_t bound);

  // Double in [0, 1) with 53 random bits.
  double unit();

  // Fisher-Yates using below().
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace rforge
