#include "rforge/vsp.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace rforge::vsp {

std::string HazardMap::tile_string() const {
  std::string s;
  s.reserve(tiles.size());
  for (Tile t : tiles) s += (t == Tile::Safe ? 'S' : 'H');
  return s;
}

std::vector<Tile> HazardMap::tiles_from_string(std::string_view text, int n) {
  if (static_cast<int>(text.size()) != n * n) {
    throw std::invalid_argument("tile string length does not match dimension");
  }
  std::vector<Tile> tiles(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'S') tiles[i] = Tile::Safe;
    else if (text[i] == 'H') tiles[i] = Tile::Hole;
    else throw std::invalid_argument("tile string must contain only 'S'/'H'");
  }
  return tiles;
}

namespace {

bool safe_reachable(const HazardMap& map) {
  const int n = map.n;
  const auto idx = [n](Cell c) { return static_cast<size_t>(c.row) * n + c.col; };
  std::vector<char> seen(static_cast<size_t>(n) * n, 0);
  std::deque<Cell> queue{map.start};
  seen[idx(map.start)] = 1;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    if (cur == map.goal) return true;
    for (Cell nb : neighbors(cur, n)) {
      if (seen[idx(nb)] || !map.is_safe(nb)) continue;
      seen[idx(nb)] = 1;
      queue.push_back(nb);
    }
  }
  return false;
}

}  // namespace

HazardMap generate_map(int n, double p_hole, Rng& rng, int max_resamples) {
  if (n < 2) throw std::invalid_argument("map dimension must be >= 2");
  if (p_hole < 0.0 || p_hole >= 1.0) throw std::invalid_argument("p_hole must be in [0, 1)");

  for (int attempt = 0; attempt < max_resamples; ++attempt) {
    HazardMap map;
    map.n = n;
    map.tiles.resize(static_cast<size_t>(n) * n);
    std::vector<uint32_t> safe;
    safe.reserve(map.tiles.size());
    for (size_t i = 0; i < map.tiles.size(); ++i) {
      map.tiles[i] = (rng.unit() < p_hole) ? Tile::Hole : Tile::Safe;
      if (map.tiles[i] == Tile::Safe) safe.push_back(static_cast<uint32_t>(i));
    }
    if (safe.size() < 2) continue;

    const uint64_t first = rng.below(safe.size());
    uint64_t second = rng.below(safe.size() - 1);
    if (second >= first) ++second;
    map.start = {static_cast<int>(safe[first] / n), static_cast<int>(safe[first] % n)};
    map.goal = {static_cast<int>(safe[second] / n), static_cast<int>(safe[second] % n)};

    if (safe_reachable(map)) return map;
  }
  throw MapInfeasible("no feasible map after " + std::to_string(max_resamples) +
                      " resamples (p_hole=" + std::to_string(p_hole) + ")");
}

GridPath dijkstra_safe_path(const HazardMap& map) {
  const int n = map.n;
  const auto idx = [n](Cell c) { return static_cast<size_t>(c.row) * n + c.col; };
  constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max();

  std::vector<uint32_t> dist(static_cast<size_t>(n) * n, kInf);
  std::vector<int32_t> parent(static_cast<size_t>(n) * n, -1);
  std::vector<char> done(static_cast<size_t>(n) * n, 0);

  // min-heap on (distance, insertion sequence): FIFO among equal keys
  using Entry = std::pair<uint64_t, Cell>;
  const auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  uint64_t seq = 0;
  const auto key = [&seq](uint32_t d) { return (static_cast<uint64_t>(d) << 32) | seq++; };

  dist[idx(map.start)] = 0;
  heap.push({key(0), map.start});

  while (!heap.empty()) {
    const Cell cur = heap.top().second;
    heap.pop();
    if (done[idx(cur)]) continue;
    done[idx(cur)] = 1;
    if (cur == map.goal) break;
    const uint32_t du = dist[idx(cur)];
    for (Cell nb : neighbors(cur, n)) {
      if (!map.is_safe(nb) || done[idx(nb)]) continue;
      const uint32_t relaxed = du + 1;  // w(u,v) = 1
      if (relaxed < dist[idx(nb)]) {
        dist[idx(nb)] = relaxed;
        parent[idx(nb)] = static_cast<int32_t>(idx(cur));
        heap.push({key(relaxed), nb});
      }
    }
  }

  if (dist[idx(map.goal)] == kInf) {
    throw std::logic_error("hazard map violates its reachability invariant");
  }

  std::vector<Cell> cells;
  for (Cell c = map.goal;;) {
    cells.push_back(c);
    if (c == map.start) break;
    const int32_t p = parent[idx(c)];
    c = {static_cast<int>(p) / n, static_cast<int>(p) % n};
  }
  std::reverse(cells.begin(), cells.end());
  return path_from_cells(std::move(cells));
}

}  // namespace rforge::vsp
