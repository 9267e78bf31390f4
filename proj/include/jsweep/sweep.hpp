#ifndef JSWEEP_SWEEP_HPP
#define JSWEEP_SWEEP_HPP

#include <vector>

#include "jsweep/curve.hpp"
#include "jsweep/geometry.hpp"
#include "jsweep/segment.hpp"

namespace jsweep {

enum class ProfileSide { Upper, Lower };

/// Linear profile piece over [x0, x1], from (x0, y0) to (x1, y1).
struct ProfilePiece {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  double eval(double x) const {
    if (x1 == x0) return y0;
    const double t = (x - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
  }
};

/// Profile jump: one-sided limits disagree at x. free_parts are the
/// sub-intervals of the jump whose interiors avoid the curve.
struct Discontinuity {
  double x = 0.0;
  double y_minus = 0.0;
  double y_plus = 0.0;
  std::vector<Interval> free_parts;

  Interval span() const {
    return {std::min(y_minus, y_plus), std::max(y_minus, y_plus)};
  }
};

/// Piecewise-linear upper or lower function of a horizontal sweep.
/// Pieces tile [t.x_left, t.x_right]; breakpoints sit at vertex
/// x-coordinates of the curve.
struct Profile {
  ProfileSide side = ProfileSide::Upper;
  std::vector<ProfilePiece> pieces;
  std::vector<Discontinuity> jumps;

  double eval(double x) const;
  double left_limit() const { return pieces.front().y0; }
  double right_limit() const { return pieces.back().y1; }
};

/// Vertical slab of swept area with linear top and bottom; top and bottom
/// lie on the curve, the vertical sides are shared with neighbours or form
/// boundary segments.
struct Trapezoid {
  double x0 = 0.0;
  double x1 = 0.0;
  double top_y0 = 0.0;
  double top_y1 = 0.0;
  double bot_y0 = 0.0;
  double bot_y1 = 0.0;
  int node = -1;  // owning sweep node, set by the engine

  double top_at(double x) const {
    return top_y0 + (x - x0) / (x1 - x0) * (top_y1 - top_y0);
  }
  double bot_at(double x) const {
    return bot_y0 + (x - x0) / (x1 - x0) * (bot_y1 - bot_y0);
  }
  double area() const {
    return (x1 - x0) * (0.5 * (top_y0 + top_y1) - 0.5 * (bot_y0 + bot_y1));
  }
  bool contains(const Point2& p, double tol) const {
    if (p.x() < x0 - tol || p.x() > x1 + tol) return false;
    const double x = std::clamp(p.x(), x0, x1);
    return p.y() >= bot_at(x) - tol && p.y() <= top_at(x) + tol;
  }
};

/// Which side of a vertical boundary segment the swept region lies on.
enum class SweptSide { Left, Right };

/// Actionable vertical boundary segment of a single sweep: interior free
/// of the curve, swept region on exactly one side.
struct SweepVertical {
  double x = 0.0;
  Interval span;
  SweptSide swept_side = SweptSide::Left;
};

struct BoundaryElement {
  enum class Kind { CurveArc, FreeVertical, EndVertical };
  Kind kind = Kind::CurveArc;
  Point2 a{0.0, 0.0};
  Point2 b{0.0, 0.0};
};

/// Cyclic boundary of one sweep: lower profile left to right, right end
/// vertical, upper profile right to left, left end vertical.
struct SweepBoundary {
  std::vector<BoundaryElement> elements;
};

struct HorizontalSweep {
  HorizontalFreeSegment t;
  Profile upper;
  Profile lower;
  std::vector<Trapezoid> trapezoids;
  std::vector<SweepVertical> free_verticals;
  SweepBoundary boundary;
  double area = 0.0;
};

/// Upper and lower functions over int(t). Throws SegmentTouchesCurve if
/// the open part of t meets the curve, EmptySegment if t is degenerate,
/// UnboundedSweep if some open segment over t has no curve hit above or
/// below (the sweep would escape to infinity).
std::pair<Profile, Profile> compute_profiles(const ClosedPolyline& curve,
                                             const HorizontalFreeSegment& t);

/// Fills in free_parts for every jump of the profile by subtracting the
/// curve's contacts on the jump line from the jump interval.
std::vector<Discontinuity> detect_discontinuities(const Profile& profile,
                                                  const ClosedPolyline& curve);

HorizontalSweep build_sweep(const ClosedPolyline& curve,
                            const HorizontalFreeSegment& t);

}  // namespace jsweep

#endif  // JSWEEP_SWEEP_HPP
