#ifndef JSWEEP_CURVE_HPP
#define JSWEEP_CURVE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "jsweep/geometry.hpp"

namespace jsweep {

enum class HitKind { Crossing, Touch, EdgeOverlap };

/// One connected contact of the curve with a query line. Point contacts
/// have lo == hi; EdgeOverlap records span a curve edge lying on the line.
struct HitRecord {
  double lo = 0.0;
  double hi = 0.0;
  HitKind kind = HitKind::Crossing;

  Interval interval() const { return {lo, hi}; }
};

/// All contacts of the curve with one axis-parallel line, sorted by lo.
/// For a vertical line, coord is x and lo/hi are y values; for a
/// horizontal line, coord is y and lo/hi are x values.
struct LineHits {
  double coord = 0.0;
  std::vector<HitRecord> records;

  bool covers(double v, double tol) const {
    for (const HitRecord& r : records) {
      if (r.lo - tol <= v && v <= r.hi + tol) return true;
    }
    return false;
  }
};

/// A simple closed polyline (the concrete Jordan curve). Vertices are kept
/// counterclockwise; the loop closes implicitly from the last vertex to the
/// first. Immutable after construction.
class ClosedPolyline {
 public:
  explicit ClosedPolyline(std::vector<Point2> vertices, bool validate = true);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const Point2& vertex(std::size_t i) const { return vertices_[i]; }
  const Point2& edge_a(std::size_t i) const { return vertices_[i]; }
  const Point2& edge_b(std::size_t i) const {
    return vertices_[(i + 1) % vertices_.size()];
  }

  const BoundingBox& bounds() const { return bounds_; }

  /// Global coincidence tolerance: 1e-9 times the bounding box diagonal.
  double eps() const { return eps_; }
  bool simplicity_checked() const { return simplicity_checked_; }

  LineHits vertical_hits(double x) const;
  LineHits horizontal_hits(double y) const;

  /// Indices of edges whose x-span meets [lo, hi].
  std::vector<int> edges_in_xrange(double lo, double hi) const;

  double distance_to(const Point2& p) const;
  /// Fast test: is p within tol of the curve? Uses the edge x-span index.
  bool near_curve(const Point2& p, double tol) const;

 private:
  LineHits line_hits(int axis, double c) const;

  std::vector<Point2> vertices_;
  BoundingBox bounds_;
  double eps_ = 0.0;
  bool simplicity_checked_ = false;
  IntervalIndex x_index_;
  IntervalIndex y_index_;
};

/// Parses {"type":"polyline"|"koch"|"regular", ...} JSON text.
ClosedPolyline load_curve(const std::string& json_text);
ClosedPolyline load_curve_file(const std::string& path);

/// Outward Koch construction over an explicit base triangle.
ClosedPolyline koch_generate(int level, const Point2& a, const Point2& b,
                             const Point2& c,
                             std::size_t edge_cap = 1000000);
/// Koch snowflake over the unit-side equilateral base triangle.
ClosedPolyline koch_snowflake(int level);

ClosedPolyline regular_ngon(int n, double radius, const Point2& center);

/// Rotates the curve about the origin by the smallest angle in
/// {0, delta, 2*delta, ...} that leaves every edge at least 1e-6 rad away
/// from vertical. Returns the rotated curve and the angle used.
std::pair<ClosedPolyline, double> remove_degeneracy(const ClosedPolyline& curve,
                                                    double delta = 1e-3);

}  // namespace jsweep

#endif  // JSWEEP_CURVE_HPP
