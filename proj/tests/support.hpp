#ifndef JSWEEP_TESTS_SUPPORT_HPP
#define JSWEEP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jsweep/curve.hpp"
#include "jsweep/geometry.hpp"
#include "jsweep/oracle.hpp"

namespace jsweep::testing {

inline std::vector<Point2> square_vertices() {
  return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

// C-shaped rectilinear polygon: a 3x3 square with the notch
// (2,3)x(1,2) removed from the right side. Area 7.
inline std::vector<Point2> cshape_vertices() {
  return {{0.0, 0.0}, {3.0, 0.0}, {3.0, 3.0}, {0.0, 3.0},
          {0.0, 2.0}, {2.0, 2.0}, {2.0, 1.0}, {0.0, 1.0}};
}

inline ClosedPolyline make_square() { return ClosedPolyline(square_vertices()); }
inline ClosedPolyline make_cshape() { return ClosedPolyline(cshape_vertices()); }

// Random simple polygon with n vertices: random radii at jittered sorted
// angles around the origin (star-shaped, hence simple), gated by the
// brute-force simplicity check; degenerate draws are rejected and retried.
inline std::vector<Point2> random_simple_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ur(0.25, 1.0);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * M_PI);
  for (;;) {
    std::vector<double> angles(n);
    for (double& a : angles) a = ua(rng);
    std::sort(angles.begin(), angles.end());
    bool separated = true;
    for (int i = 0; i + 1 < n; ++i) {
      if (angles[i + 1] - angles[i] < 1e-3) separated = false;
    }
    if (angles.front() + 2.0 * M_PI - angles.back() < 1e-3) separated = false;
    if (!separated) continue;
    std::vector<Point2> poly(n);
    for (int i = 0; i < n; ++i) {
      const double r = ur(rng);
      poly[i] = Point2(r * std::cos(angles[i]), r * std::sin(angles[i]));
    }
    BoundingBox box;
    for (const Point2& p : poly) box.expand(p);
    if (!oracle::simplicity_check(poly, 1e-9 * box.diagonal()).simple) continue;
    return poly;
  }
}

// Closed form for the area of the level-k snowflake over a unit-side base
// triangle: A_k = (sqrt(3)/4) * (8/5 - (3/5) * (4/9)^k).
inline double snowflake_area(int level) {
  const double a0 = std::sqrt(3.0) / 4.0;
  return a0 * (8.0 / 5.0 - (3.0 / 5.0) * std::pow(4.0 / 9.0, level));
}

}  // namespace jsweep::testing

#endif  // JSWEEP_TESTS_SUPPORT_HPP
