#include "rforge/maze.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace rforge::maze {

CellPair make_corridor(Cell a, Cell b) {
  return a < b ? CellPair{a, b} : CellPair{b, a};
}

bool Maze::has_corridor(Cell a, Cell b) const {
  return std::binary_search(corridors.begin(), corridors.end(), make_corridor(a, b));
}

std::vector<uint8_t> open_mask(const Maze& m) {
  std::vector<uint8_t> mask(static_cast<size_t>(m.n) * m.n, 0);
  for (const auto& [a, b] : m.corridors) {
    const Direction ab = direction_between(a, b);
    const Direction ba = direction_between(b, a);
    mask[static_cast<size_t>(a.row) * m.n + a.col] |= uint8_t(1) << static_cast<int>(ab);
    mask[static_cast<size_t>(b.row) * m.n + b.col] |= uint8_t(1) << static_cast<int>(ba);
  }
  return mask;
}

Maze carve_maze(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("maze dimension must be >= 2");

  Maze m;
  m.n = n;
  m.corridors.reserve(static_cast<size_t>(n) * n - 1);

  std::vector<char> visited(static_cast<size_t>(n) * n, 0);
  std::vector<Cell> stack;
  stack.push_back({0, 0});
  visited[0] = 1;

  std::vector<Cell> unvisited;
  while (!stack.empty()) {
    const Cell cur = stack.back();
    unvisited.clear();
    for (Cell nb : neighbors(cur, n)) {
      if (!visited[static_cast<size_t>(nb.row) * n + nb.col]) unvisited.push_back(nb);
    }
    if (unvisited.empty()) {
      stack.pop_back();
      continue;
    }
    const Cell next = unvisited[rng.below(unvisited.size())];
    visited[static_cast<size_t>(next.row) * n + next.col] = 1;
    m.corridors.push_back(make_corridor(cur, next));
    stack.push_back(next);
  }

  std::sort(m.corridors.begin(), m.corridors.end());
  return m;
}

std::pair<Cell, Cell> sample_endpoints(const Maze& m, Rng& rng) {
  const uint64_t total = static_cast<uint64_t>(m.n) * m.n;
  if (total < 2) throw std::invalid_argument("maze must have at least 2 cells");
  const uint64_t first = rng.below(total);
  uint64_t second = rng.below(total - 1);
  if (second >= first) ++second;
  const auto to_cell = [&](uint64_t idx) {
    return Cell{static_cast<int>(idx / m.n), static_cast<int>(idx % m.n)};
  };
  return {to_cell(first), to_cell(second)};
}

GridPath bfs_shortest_path(const Maze& m) {
  const int n = m.n;
  const auto idx = [n](Cell c) { return static_cast<size_t>(c.row) * n + c.col; };
  const auto mask = open_mask(m);

  std::vector<int32_t> parent(static_cast<size_t>(n) * n, -1);
  std::vector<char> seen(static_cast<size_t>(n) * n, 0);
  std::deque<Cell> queue;
  queue.push_back(m.start);
  seen[idx(m.start)] = 1;

  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    if (cur == m.goal) break;
    const uint8_t open = mask[idx(cur)];
    for (Direction d : kDirectionOrder) {
      if (!(open & (uint8_t(1) << static_cast<int>(d)))) continue;
      const Cell nb = step(cur, d);
      if (seen[idx(nb)]) continue;
      seen[idx(nb)] = 1;
      parent[idx(nb)] = static_cast<int32_t>(idx(cur));
      queue.push_back(nb);
    }
  }

  if (!seen[idx(m.goal)]) {
    throw std::logic_error("maze corridor graph does not connect start and goal");
  }

  std::vector<Cell> cells;
  for (Cell c = m.goal;;) {
    cells.push_back(c);
    if (c == m.start) break;
    const int32_t p = parent[idx(c)];
    c = {static_cast<int>(p) / n, static_cast<int>(p) % n};
  }
  std::reverse(cells.begin(), cells.end());
  return path_from_cells(std::move(cells));
}

}  // namespace rforge::maze
