#pragma once

#include <array>
#include <vector>

#include "rforge/core.hpp"

namespace rforge::tsp {

using Point = std::array<int, 2>;  // x, y in pixels

struct CityLayout {
  int width = 512;
  int height = 512;
  std::vector<Point> cities;
};

// A closed tour. `order` is a permutation of city indices starting at 0;
// `length` is the closed Euclidean length.
struct Tour {
  std::vector<int> order;
  double length = 0.0;
};

double euclidean(Point a, Point b);

// Closed length of `order` over `layout`.
double tour_length(const CityLayout& layout, const std::vector<int>& order);

// n_c distinct integer points, uniform over
// [margin, width-margin) x [margin, height-margin) with rejection of points
// closer than min_separation to an existing city. min_separation > 1 keeps
// city markers decodable from the canonical rendering.
CityLayout sample_cities(int n_c, int width, int height, Rng& rng,
                         int margin = 0, int min_separation = 1);

// Exact optimal closed tour by subset dynamic programming over bitmasks of
// visited cities, anchored at city 0. Requires 3 <= n_c <= 20. The returned
// order is canonical: lexicographically smallest among all optimal tours,
// which also fixes the traversal direction (order[1] < order[n_c-1]).
Tour heldkarp_solve(const CityLayout& layout);

// Bytes the DP tables would occupy for a given city count.
size_t heldkarp_table_bytes(int n_c);

}  // namespace rforge::tsp
