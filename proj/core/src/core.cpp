#include "rforge/core.hpp"

#include <cstdio>
#include <cstring>

namespace rforge {

char direction_token(Direction d) {
  switch (d) {
    case Direction::Up: return 'U';
    case Direction::Down: return 'D';
    case Direction::Left: return 'L';
    case Direction::Right: return 'R';
  }
  throw std::invalid_argument("bad Direction value");
}

Direction direction_from_token(char token) {
  switch (token) {
    case 'U': return Direction::Up;
    case 'D': return Direction::Down;
    case 'L': return Direction::Left;
    case 'R': return Direction::Right;
  }
  throw std::invalid_argument(std::string("unknown direction token '") + token + "'");
}

Cell step(Cell c, Direction d) {
  switch (d) {
    case Direction::Up: return {c.row - 1, c.col};
    case Direction::Down: return {c.row + 1, c.col};
    case Direction::Left: return {c.row, c.col - 1};
    case Direction::Right: return {c.row, c.col + 1};
  }
  throw std::invalid_argument("bad Direction value");
}

std::string cell_to_string(Cell c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "(%d,%d)", c.row, c.col);
  return buf;
}

Cell cell_from_string(std::string_view text) {
  int r = 0, c = 0;
  char tail = 0;
  std::string s(text);
  if (std::sscanf(s.c_str(), "(%d,%d%c", &r, &c, &tail) != 3 || tail != ')') {
    throw std::invalid_argument("malformed cell string: " + s);
  }
  return {r, c};
}

std::vector<Cell> neighbors(Cell c, int n) {
  if (c.row < 0 || c.col < 0 || c.row >= n || c.col >= n) {
    throw std::invalid_argument("cell " + cell_to_string(c) + " outside " +
                                std::to_string(n) + "x" + std::to_string(n) + " grid");
  }
  std::vector<Cell> out;
  out.reserve(4);
  for (Direction d : kDirectionOrder) {
    Cell nb = step(c, d);
    if (nb.row >= 0 && nb.col >= 0 && nb.row < n && nb.col < n) {
      out.push_back(nb);
    }
  }
  return out;
}

Direction direction_between(Cell a, Cell b) {
  const int dr = b.row - a.row;
  const int dc = b.col - a.col;
  if (dr == 1 && dc == 0) return Direction::Down;
  if (dr == -1 && dc == 0) return Direction::Up;
  if (dr == 0 && dc == 1) return Direction::Right;
  if (dr == 0 && dc == -1) return Direction::Left;
  throw std::invalid_argument("cells " + cell_to_string(a) + " and " +
                              cell_to_string(b) + " are not 4-adjacent");
}

std::string_view task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::Maze: return "maze";
    case TaskKind::Tsp: return "tsp";
    case TaskKind::Sudoku: return "sudoku";
    case TaskKind::Vsp: return "vsp";
  }
  throw std::invalid_argument("bad TaskKind value");
}

TaskKind task_kind_from_name(std::string_view name) {
  if (name == "maze") return TaskKind::Maze;
  if (name == "tsp") return TaskKind::Tsp;
  if (name == "sudoku") return TaskKind::Sudoku;
  if (name == "vsp") return TaskKind::Vsp;
  throw std::invalid_argument("unknown task kind: " + std::string(name));
}

std::string GridPath::move_string() const {
  std::string out;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ',';
    out += direction_token(moves[i]);
  }
  return out;
}

GridPath path_from_cells(std::vector<Cell> cells) {
  GridPath p;
  p.moves.reserve(cells.empty() ? 0 : cells.size() - 1);
  for (size_t i = 0; i + 1 < cells.size(); ++i) {
    p.moves.push_back(direction_between(cells[i], cells[i + 1]));
  }
  p.cells = std::move(cells);
  return p;
}

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;

uint64_t fnv1a_accumulate(uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

void put_le64(unsigned char* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

}  // namespace

uint64_t derive_seed(const SeedSpec& spec) {
  unsigned char buf[8];
  uint64_t h = kFnvOffset;
  put_le64(buf, spec.master_seed);
  h = fnv1a_accumulate(h, buf, 8);
  const uint32_t tag_len = static_cast<uint32_t>(spec.task_tag.size());
  unsigned char len_buf[4];
  for (int i = 0; i < 4; ++i) len_buf[i] = static_cast<unsigned char>(tag_len >> (8 * i));
  h = fnv1a_accumulate(h, len_buf, 4);
  h = fnv1a_accumulate(h, spec.task_tag.data(), spec.task_tag.size());
  put_le64(buf, spec.index);
  h = fnv1a_accumulate(h, buf, 8);
  return mix64(h);
}

uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  return mix64(state_);
}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below bound must be > 0");
  // rejection sampling: drop the low 2^64 mod bound values
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace rforge
