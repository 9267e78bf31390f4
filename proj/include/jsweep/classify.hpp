#ifndef JSWEEP_CLASSIFY_HPP
#define JSWEEP_CLASSIFY_HPP

#include <string>
#include <vector>

#include "jsweep/engine.hpp"
#include "jsweep/geometry.hpp"

namespace jsweep {

/// Point-location structure over the accumulated trapezoids: vertical slabs
/// at every trapezoid side, each slab holding its trapezoids sorted bottom
/// to top for binary search.
class SlabIndex {
 public:
  explicit SlabIndex(const SweepState& state);

  /// Index into the state's trapezoid array, or -1.
  int trapezoid_at(const Point2& p, double tol) const;
  bool interior(const Point2& p, double tol) const {
    return trapezoid_at(p, tol) >= 0;
  }

  std::size_t slab_count() const { return xs_.empty() ? 0 : xs_.size() - 1; }

 private:
  const std::vector<Trapezoid>* traps_ = nullptr;
  std::vector<double> xs_;                // slab boundaries, ascending
  std::vector<std::vector<int>> slabs_;   // per slab, sorted by bottom
};

enum class Verdict { Interior, Exterior, OnCurve, Unknown };

enum class ExteriorMethod { None, BoundingBox, InvertedSweep, Complement };

struct Classification {
  Verdict verdict = Verdict::Unknown;
  ExteriorMethod exterior_method = ExteriorMethod::None;
  double distance_hint = 0.0;  // distance to the curve
};

/// Classifies q against the swept region. Exterior verdicts are certified
/// by the bounding box or an exterior sweep when available; otherwise they
/// are by complement of the maximal interior sweep.
Classification classify_point(const SlabIndex& index,
                              const ClosedPolyline& curve, const Point2& q,
                              const ExteriorState* exterior = nullptr);

/// Area of the swept region, summed in sweep order.
double interior_area(const SweepState& state);

struct RectilinearPath {
  std::vector<Point2> waypoints;  // includes both endpoints
  int turns = 0;
};

/// Axis-parallel path between two interior points staying strictly inside
/// the curve, routed through sweep base segments and region bridges.
/// Throws NotInterior if an endpoint is not in the swept region, NoPath if
/// the regions are not connected (cannot happen once maximal).
RectilinearPath connectivity_path(const SweepState& state, const Point2& q1,
                                  const Point2& q2);

/// CSV classification of many points: "x,y,verdict,distance_hint" per line
/// with header.
std::string classify_batch_csv(const SlabIndex& index,
                               const ClosedPolyline& curve,
                               const std::vector<Point2>& points,
                               const ExteriorState* exterior = nullptr);

std::string verdict_name(Verdict v);

}  // namespace jsweep

#endif  // JSWEEP_CLASSIFY_HPP
