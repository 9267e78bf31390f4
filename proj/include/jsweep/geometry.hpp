#ifndef JSWEEP_GEOMETRY_HPP
#define JSWEEP_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace jsweep {

using Point2 = Eigen::Vector2d;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Base class for every geometric failure raised by the library.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

#define JSWEEP_DEFINE_ERROR(Name)                                   \
  class Name : public GeometryError {                               \
   public:                                                          \
    explicit Name(const std::string& what) : GeometryError(what) {} \
  }

JSWEEP_DEFINE_ERROR(NonSimpleCurve);
JSWEEP_DEFINE_ERROR(TooFewVertices);
JSWEEP_DEFINE_ERROR(DegenerateEdge);
JSWEEP_DEFINE_ERROR(LevelTooLarge);
JSWEEP_DEFINE_ERROR(PointOnCurve);
JSWEEP_DEFINE_ERROR(SegmentTouchesCurve);
JSWEEP_DEFINE_ERROR(EmptySegment);
JSWEEP_DEFINE_ERROR(SegmentTooShort);
JSWEEP_DEFINE_ERROR(NoRoom);
JSWEEP_DEFINE_ERROR(SpliceMismatch);
JSWEEP_DEFINE_ERROR(QueueEmpty);
JSWEEP_DEFINE_ERROR(NotMaximal);
JSWEEP_DEFINE_ERROR(RootNotFound);
JSWEEP_DEFINE_ERROR(UnboundedSweep);
JSWEEP_DEFINE_ERROR(CenterOnCurve);
JSWEEP_DEFINE_ERROR(NonSimpleImage);
JSWEEP_DEFINE_ERROR(EmptyState);
JSWEEP_DEFINE_ERROR(NotInterior);
JSWEEP_DEFINE_ERROR(NoPath);

#undef JSWEEP_DEFINE_ERROR

struct BoundingBox {
  Point2 min{kInf, kInf};
  Point2 max{-kInf, -kInf};

  void expand(const Point2& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  double diagonal() const { return (max - min).norm(); }
  bool contains(const Point2& p, double margin = 0.0) const {
    return p.x() >= min.x() - margin && p.x() <= max.x() + margin &&
           p.y() >= min.y() - margin && p.y() <= max.y() + margin;
  }
};

/// Closed interval on a line, used for hit records and vertical segments.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

inline double overlap_length(const Interval& a, const Interval& b) {
  return std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
}

/// Removes `holes` from `base` and splits at `cuts`; keeps parts longer
/// than `min_len`. Holes must not be larger than base by construction.
std::vector<Interval> subtract_intervals(const Interval& base,
                                         const std::vector<Interval>& holes,
                                         double min_len);

inline double squared_point_segment_distance(const Point2& p, const Point2& a,
                                             const Point2& b) {
  const Point2 d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 <= 0.0) return (p - a).squaredNorm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).squaredNorm();
}

inline double point_segment_distance(const Point2& p, const Point2& a,
                                     const Point2& b) {
  return std::sqrt(squared_point_segment_distance(p, a, b));
}

/// Orientation predicate: > 0 if c is left of ray a->b.
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c,
                        const Point2& d, double tol);

/// Static interval tree over [lo, hi] spans; answers range queries with
/// the indices of all spans meeting the query window.
class IntervalIndex {
 public:
  IntervalIndex() = default;
  explicit IntervalIndex(std::vector<Interval> spans);

  void query(double lo, double hi, std::vector<int>& out) const;
  std::vector<int> query(double lo, double hi) const {
    std::vector<int> out;
    query(lo, hi, out);
    return out;
  }

 private:
  struct Node {
    double center = 0.0;
    int left = -1;
    int right = -1;
    std::vector<int> by_lo;  // spans containing center, ascending lo
    std::vector<int> by_hi;  // same spans, descending hi
  };

  int build(std::vector<int>& ids);
  void query_node(int node, double lo, double hi, std::vector<int>& out) const;

  std::vector<Interval> spans_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace jsweep

#endif  // JSWEEP_GEOMETRY_HPP
