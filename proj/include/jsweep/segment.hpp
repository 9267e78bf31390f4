#ifndef JSWEEP_SEGMENT_HPP
#define JSWEEP_SEGMENT_HPP

#include "jsweep/curve.hpp"
#include "jsweep/geometry.hpp"

namespace jsweep {

enum class EndpointKind {
  OnCurve,   // endpoint lies on the curve
  Infinite,  // no curve hit on that side
  Free,      // endpoint in free space (clipped extension segments)
};

/// Maximal vertical free segment through a point: interior disjoint from
/// the curve, endpoints on the curve or at infinity.
struct OpenSegment {
  double x = 0.0;
  double y_low = -kInf;
  double y_high = kInf;
  EndpointKind low_kind = EndpointKind::Infinite;
  EndpointKind high_kind = EndpointKind::Infinite;

  bool finite() const {
    return low_kind != EndpointKind::Infinite &&
           high_kind != EndpointKind::Infinite;
  }
  double length() const { return y_high - y_low; }
};

/// Horizontal mirror of OpenSegment; supplies sweep base segments.
struct HorizontalFreeSegment {
  double y = 0.0;
  double x_left = -kInf;
  double x_right = kInf;
  EndpointKind left_kind = EndpointKind::Infinite;
  EndpointKind right_kind = EndpointKind::Infinite;

  bool finite() const {
    return left_kind != EndpointKind::Infinite &&
           right_kind != EndpointKind::Infinite;
  }
  double length() const { return x_right - x_left; }
};

OpenSegment open_segment_at(const ClosedPolyline& curve, const Point2& p);
HorizontalFreeSegment horizontal_segment_at(const ClosedPolyline& curve,
                                            const Point2& p);

}  // namespace jsweep

#endif  // JSWEEP_SEGMENT_HPP
