#include "rforge/tsp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rforge::tsp {

double euclidean(Point a, Point b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

double tour_length(const CityLayout& layout, const std::vector<int>& order) {
  double len = 0.0;
  for (size_t i = 0; i < order.size(); ++i) {
    len += euclidean(layout.cities[order[i]], layout.cities[order[(i + 1) % order.size()]]);
  }
  return len;
}

CityLayout sample_cities(int n_c, int width, int height, Rng& rng,
                         int margin, int min_separation) {
  if (n_c < 3) throw std::invalid_argument("city count must be >= 3");
  const int64_t span_x = width - 2 * static_cast<int64_t>(margin);
  const int64_t span_y = height - 2 * static_cast<int64_t>(margin);
  if (span_x <= 0 || span_y <= 0 || span_x * span_y < n_c) {
    throw std::invalid_argument("plane too small for requested city count");
  }

  CityLayout layout;
  layout.width = width;
  layout.height = height;
  layout.cities.reserve(n_c);

  const int64_t min_sep_sq = static_cast<int64_t>(min_separation) * min_separation;
  const int max_attempts = 10000 * n_c;
  int attempts = 0;
  while (static_cast<int>(layout.cities.size()) < n_c) {
    if (++attempts > max_attempts) {
      throw std::invalid_argument("could not place cities with requested separation");
    }
    const Point p{margin + static_cast<int>(rng.below(static_cast<uint64_t>(span_x))),
                  margin + static_cast<int>(rng.below(static_cast<uint64_t>(span_y)))};
    bool ok = true;
    for (const Point& q : layout.cities) {
      const int64_t dx = p[0] - q[0];
      const int64_t dy = p[1] - q[1];
      if (dx * dx + dy * dy < min_sep_sq) {
        ok = false;
        break;
      }
    }
    if (ok) layout.cities.push_back(p);
  }
  return layout;
}

size_t heldkarp_table_bytes(int n_c) {
  const size_t masks = size_t(1) << (n_c - 1);
  return masks * (n_c - 1) * (sizeof(double) + sizeof(uint8_t));
}

Tour heldkarp_solve(const CityLayout& layout) {
  const int n = static_cast<int>(layout.cities.size());
  if (n < 3 || n > 20) throw std::invalid_argument("Held-Karp supports 3..20 cities");

  std::vector<double> dist(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      dist[static_cast<size_t>(i) * n + j] = euclidean(layout.cities[i], layout.cities[j]);
    }
  }
  const auto d = [&](int i, int j) { return dist[static_cast<size_t>(i) * n + j]; };

  // dp[mask][i]: min cost of a path 0 -> ... -> city (i+1) visiting exactly
  // the cities of mask, where bit k of mask stands for city k+1.
  const int m = n - 1;
  const size_t num_masks = size_t(1) << m;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(num_masks * m, kInf);

  for (int i = 0; i < m; ++i) {
    dp[(size_t(1) << i) * m + i] = d(0, i + 1);
  }
  for (size_t mask = 1; mask < num_masks; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons are the base case
    for (int i = 0; i < m; ++i) {
      if (!(mask & (size_t(1) << i))) continue;
      const size_t prev = mask ^ (size_t(1) << i);
      double best = kInf;
      for (int j = 0; j < m; ++j) {
        if (!(prev & (size_t(1) << j))) continue;
        const double cand = dp[prev * m + j] + d(j + 1, i + 1);
        if (cand < best) best = cand;
      }
      dp[mask * m + i] = best;
    }
  }

  const size_t full = num_masks - 1;
  double optimal = kInf;
  for (int i = 0; i < m; ++i) {
    const double cand = dp[full * m + i] + d(i + 1, 0);
    if (cand < optimal) optimal = cand;
  }

  // Cost of finishing from city `i+1` with `mask` still unvisited, i.e. the
  // cheapest path (i+1) -> mask -> 0. By distance symmetry this equals
  // min_j dp[mask][j] + d(j+1, i+1).
  const auto finish_cost = [&](size_t mask, int i) {
    if (mask == 0) return d(i + 1, 0);
    double best = kInf;
    for (int j = 0; j < m; ++j) {
      if (!(mask & (size_t(1) << j))) continue;
      const double cand = dp[mask * m + j] + d(j + 1, i + 1);
      if (cand < best) best = cand;
    }
    return best;
  };

  // Forward greedy reconstruction: at every step commit to the smallest next
  // city that still admits an optimal completion. This yields the
  // lexicographically smallest optimal order, which is the canonical tie
  // rule (and fixes the traversal direction).
  const double eps = 1e-9 * std::max(1.0, optimal);
  Tour tour;
  tour.order.reserve(n);
  tour.order.push_back(0);
  size_t remaining = full;
  int cur = 0;  // city index
  double cost = 0.0;
  for (int steps = 0; steps < m; ++steps) {
    bool advanced = false;
    for (int i = 0; i < m; ++i) {
      if (!(remaining & (size_t(1) << i))) continue;
      const size_t rest = remaining ^ (size_t(1) << i);
      const double total = cost + d(cur, i + 1) + finish_cost(rest, i);
      if (total <= optimal + eps) {
        cost += d(cur, i + 1);
        cur = i + 1;
        remaining = rest;
        tour.order.push_back(cur);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw std::logic_error("Held-Karp reconstruction failed");
  }

  tour.length = tour_length(layout, tour.order);
  return tour;
}

}  // namespace rforge::tsp
