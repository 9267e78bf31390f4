#ifndef JSWEEP_ORACLE_HPP
#define JSWEEP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jsweep/geometry.hpp"

// Brute-force reference implementations used for validation. Everything in
// this namespace works directly on raw vertex loops and deliberately shares
// no geometry code with the sweep machinery beyond Point2. Quadratic and
// linear scans throughout; clarity over speed.
namespace jsweep::oracle {

struct OracleVerdict {
  bool inside = false;
  bool on_boundary = false;
};

struct SimplicityReport {
  bool simple = true;
  int edge_a = -1;
  int edge_b = -1;
};

/// Even-odd ray cast. The ray direction is re-rotated until it avoids
/// passing near any vertex.
OracleVerdict raycast_point_in_polygon(std::span<const Point2> poly,
                                       const Point2& q, double tol);

double shoelace_area(std::span<const Point2> poly);

/// O(n^2) pairwise test of non-adjacent edges, with tolerance.
SimplicityReport simplicity_check(std::span<const Point2> poly, double tol);

/// Maximal vertical free segment through p, by naive per-edge intersection.
/// Returns y bounds; missing value means unbounded on that side.
struct BruteSegment {
  std::optional<double> low;
  std::optional<double> high;
};
BruteSegment brute_force_open_segment(std::span<const Point2> poly,
                                      const Point2& p, double tol);
/// Horizontal mirror of brute_force_open_segment (x bounds at p.y).
BruteSegment brute_force_horizontal_segment(std::span<const Point2> poly,
                                            const Point2& p, double tol);

/// Monte-Carlo area estimate by ray casting over the bounding box.
double monte_carlo_area(std::span<const Point2> poly, std::uint64_t seed,
                        int samples, double tol);

}  // namespace jsweep::oracle

#endif  // JSWEEP_ORACLE_HPP
