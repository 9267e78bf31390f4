#include "jsweep/segment.hpp"

namespace jsweep {

namespace {

// Endpoint pair around value v among sorted disjoint hit records:
// greatest record top below v and least record bottom above v.
struct Bracket {
  bool has_low = false;
  bool has_high = false;
  double low = 0.0;
  double high = 0.0;
};

Bracket bracket_around(const LineHits& hits, double v, double tol) {
  Bracket b;
  for (const HitRecord& r : hits.records) {
    if (r.lo - tol <= v && v <= r.hi + tol) {
      throw PointOnCurve("query point lies on a curve contact");
    }
    if (r.hi < v) {
      b.has_low = true;
      b.low = r.hi;  // records sorted ascending; last one below wins
    } else if (r.lo > v && !b.has_high) {
      b.has_high = true;
      b.high = r.lo;
    }
  }
  return b;
}

}  // namespace

OpenSegment open_segment_at(const ClosedPolyline& curve, const Point2& p) {
  if (curve.near_curve(p, curve.eps())) {
    throw PointOnCurve("open_segment_at: point within eps of the curve");
  }
  const LineHits hits = curve.vertical_hits(p.x());
  const Bracket b = bracket_around(hits, p.y(), curve.eps());
  OpenSegment s;
  s.x = p.x();
  if (b.has_low) {
    s.y_low = b.low;
    s.low_kind = EndpointKind::OnCurve;
  }
  if (b.has_high) {
    s.y_high = b.high;
    s.high_kind = EndpointKind::OnCurve;
  }
  return s;
}

HorizontalFreeSegment horizontal_segment_at(const ClosedPolyline& curve,
                                            const Point2& p) {
  if (curve.near_curve(p, curve.eps())) {
    throw PointOnCurve("horizontal_segment_at: point within eps of the curve");
  }
  const LineHits hits = curve.horizontal_hits(p.y());
  const Bracket b = bracket_around(hits, p.x(), curve.eps());
  HorizontalFreeSegment s;
  s.y = p.y();
  if (b.has_low) {
    s.x_left = b.low;
    s.left_kind = EndpointKind::OnCurve;
  }
  if (b.has_high) {
    s.x_right = b.high;
    s.right_kind = EndpointKind::OnCurve;
  }
  return s;
}

}  // namespace jsweep
