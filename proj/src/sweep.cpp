#include "jsweep/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace jsweep {

namespace {

// Free parts shorter than this multiple of eps are below resolution and
// never become actionable frontier segments.
constexpr double kMinFreeFactor = 10.0;

std::vector<Interval> holes_at(const ClosedPolyline& curve, double x,
                               const Interval& base) {
  std::vector<Interval> holes;
  for (const HitRecord& r : curve.vertical_hits(x).records) {
    const double lo = std::max(r.lo, base.lo);
    const double hi = std::min(r.hi, base.hi);
    if (hi >= lo) holes.push_back({lo, hi});
  }
  return holes;
}

// Vertical boundary piece decomposed against the curve, traversed from
// y_from to y_to. End pieces use EndVertical for free parts when the
// owning t endpoint floats in free space.
void emit_vertical(const ClosedPolyline& curve, double x, double y_from,
                   double y_to, BoundaryElement::Kind free_kind,
                   std::vector<BoundaryElement>& out) {
  const double eps = curve.eps();
  if (std::abs(y_to - y_from) <= eps) return;
  const Interval base{std::min(y_from, y_to), std::max(y_from, y_to)};
  const std::vector<Interval> holes = holes_at(curve, x, base);
  const std::vector<Interval> free = subtract_intervals(base, holes, 0.0);

  // Alternate on-curve and free pieces so the chain stays gap-free.
  std::vector<std::pair<Interval, bool>> parts;  // (interval, is_free)
  double cursor = base.lo;
  for (const Interval& f : free) {
    if (f.lo - cursor > eps) parts.push_back({{cursor, f.lo}, false});
    parts.push_back({f, true});
    cursor = f.hi;
  }
  if (base.hi - cursor > eps) parts.push_back({{cursor, base.hi}, false});

  const bool downward = y_to < y_from;
  if (downward) std::reverse(parts.begin(), parts.end());
  for (const auto& [iv, is_free] : parts) {
    BoundaryElement e;
    e.kind = is_free ? free_kind : BoundaryElement::Kind::CurveArc;
    e.a = Point2(x, downward ? iv.hi : iv.lo);
    e.b = Point2(x, downward ? iv.lo : iv.hi);
    out.push_back(e);
  }
}

void append_free_verticals(const ClosedPolyline& curve, double x,
                           const Interval& base, SweptSide side,
                           std::vector<SweepVertical>& out) {
  if (base.length() <= curve.eps()) return;
  const std::vector<Interval> free = subtract_intervals(
      base, holes_at(curve, x, base), kMinFreeFactor * curve.eps());
  for (const Interval& f : free) out.push_back({x, f, side});
}

}  // namespace

double Profile::eval(double x) const {
  for (const ProfilePiece& p : pieces) {
    if (x >= p.x0 && x <= p.x1) return p.eval(x);
  }
  return x < pieces.front().x0 ? pieces.front().y0 : pieces.back().y1;
}

std::pair<Profile, Profile> compute_profiles(const ClosedPolyline& curve,
                                             const HorizontalFreeSegment& t) {
  if (!t.finite()) {
    throw UnboundedSweep("sweep base segment extends to infinity");
  }
  const double eps = curve.eps();
  const double a = t.x_left;
  const double b = t.x_right;
  if (b - a <= kMinFreeFactor * eps) {
    throw EmptySegment("sweep base segment is degenerate");
  }

  // int(t) must avoid the curve; endpoint contacts are allowed.
  for (const HitRecord& r : curve.horizontal_hits(t.y).records) {
    if (r.hi > a + 2.0 * eps && r.lo < b - 2.0 * eps) {
      throw SegmentTouchesCurve("sweep base segment interior meets the curve");
    }
  }

  const std::vector<int> edges = curve.edges_in_xrange(a, b);
  std::vector<double> breakpoints = {a, b};
  for (int e : edges) {
    for (const Point2* v : {&curve.edge_a(e), &curve.edge_b(e)}) {
      if (v->x() > a + 2.0 * eps && v->x() < b - 2.0 * eps) {
        breakpoints.push_back(v->x());
      }
    }
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> xs;
  for (double x : breakpoints) {
    if (xs.empty() || x - xs.back() > eps) xs.push_back(x);
  }
  if (xs.back() != b) xs.back() = b;

  Profile upper{ProfileSide::Upper, {}, {}};
  Profile lower{ProfileSide::Lower, {}, {}};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double xm = 0.5 * (x0 + x1);
    int best_up = -1, best_lo = -1;
    double up_y = kInf, lo_y = -kInf;
    for (int e : curve.edges_in_xrange(x0, x1)) {
      const Point2& p = curve.edge_a(e);
      const Point2& q = curve.edge_b(e);
      const double exlo = std::min(p.x(), q.x());
      const double exhi = std::max(p.x(), q.x());
      if (xm <= exlo || xm >= exhi) continue;
      const double y =
          p.y() + (xm - p.x()) / (q.x() - p.x()) * (q.y() - p.y());
      if (y > t.y && y < up_y) {
        up_y = y;
        best_up = e;
      } else if (y < t.y && y > lo_y) {
        lo_y = y;
        best_lo = e;
      }
    }
    if (best_up < 0 || best_lo < 0) {
      throw UnboundedSweep("no curve hit bounding the sweep at x = " +
                           std::to_string(xm));
    }
    auto make_piece = [&](int e) {
      const Point2& p = curve.edge_a(e);
      const Point2& q = curve.edge_b(e);
      const double slope = (q.y() - p.y()) / (q.x() - p.x());
      return ProfilePiece{x0, x1, p.y() + (x0 - p.x()) * slope,
                          p.y() + (x1 - p.x()) * slope};
    };
    upper.pieces.push_back(make_piece(best_up));
    lower.pieces.push_back(make_piece(best_lo));
  }

  for (Profile* prof : {&upper, &lower}) {
    for (std::size_t i = 0; i + 1 < prof->pieces.size(); ++i) {
      const double y_minus = prof->pieces[i].y1;
      const double y_plus = prof->pieces[i + 1].y0;
      if (std::abs(y_plus - y_minus) > eps) {
        prof->jumps.push_back({prof->pieces[i].x1, y_minus, y_plus, {}});
      }
    }
  }
  return {std::move(upper), std::move(lower)};
}

std::vector<Discontinuity> detect_discontinuities(const Profile& profile,
                                                  const ClosedPolyline& curve) {
  std::vector<Discontinuity> out = profile.jumps;
  for (Discontinuity& d : out) {
    const Interval base = d.span();
    d.free_parts = subtract_intervals(base, holes_at(curve, d.x, base),
                                      kMinFreeFactor * curve.eps());
  }
  return out;
}

HorizontalSweep build_sweep(const ClosedPolyline& curve,
                            const HorizontalFreeSegment& t) {
  HorizontalSweep sweep;
  sweep.t = t;
  auto [upper, lower] = compute_profiles(curve, t);
  upper.jumps = detect_discontinuities(upper, curve);
  lower.jumps = detect_discontinuities(lower, curve);

  sweep.area = 0.0;
  for (std::size_t i = 0; i < upper.pieces.size(); ++i) {
    const ProfilePiece& up = upper.pieces[i];
    const ProfilePiece& lo = lower.pieces[i];
    Trapezoid tz{up.x0, up.x1, up.y0, up.y1, lo.y0, lo.y1};
    sweep.trapezoids.push_back(tz);
    sweep.area += tz.area();
  }

  // Actionable free verticals: profile jumps plus the two end verticals.
  for (const Discontinuity& d : upper.jumps) {
    const SweptSide side =
        d.y_plus > d.y_minus ? SweptSide::Right : SweptSide::Left;
    for (const Interval& f : d.free_parts) {
      sweep.free_verticals.push_back({d.x, f, side});
    }
  }
  for (const Discontinuity& d : lower.jumps) {
    const SweptSide side =
        d.y_plus < d.y_minus ? SweptSide::Right : SweptSide::Left;
    for (const Interval& f : d.free_parts) {
      sweep.free_verticals.push_back({d.x, f, side});
    }
  }
  append_free_verticals(curve, t.x_left,
                        {lower.left_limit(), upper.left_limit()},
                        SweptSide::Right, sweep.free_verticals);
  append_free_verticals(curve, t.x_right,
                        {lower.right_limit(), upper.right_limit()},
                        SweptSide::Left, sweep.free_verticals);

  // Cyclic boundary: lower profile left to right with its jump verticals,
  // right end vertical upward, upper profile right to left, left end
  // vertical downward.
  auto& el = sweep.boundary.elements;
  auto jump_at = [](const Profile& prof, double x) -> const Discontinuity* {
    for (const Discontinuity& d : prof.jumps) {
      if (d.x == x) return &d;
    }
    return nullptr;
  };
  for (std::size_t i = 0; i < lower.pieces.size(); ++i) {
    const ProfilePiece& p = lower.pieces[i];
    if (i > 0) {
      if (const Discontinuity* d = jump_at(lower, p.x0)) {
        emit_vertical(curve, d->x, d->y_minus, d->y_plus,
                      BoundaryElement::Kind::FreeVertical, el);
      }
    }
    el.push_back({BoundaryElement::Kind::CurveArc, Point2(p.x0, p.y0),
                  Point2(p.x1, p.y1)});
  }
  emit_vertical(curve, t.x_right, lower.right_limit(), upper.right_limit(),
                t.right_kind == EndpointKind::Free
                    ? BoundaryElement::Kind::EndVertical
                    : BoundaryElement::Kind::FreeVertical,
                el);
  for (std::size_t ri = upper.pieces.size(); ri-- > 0;) {
    const ProfilePiece& p = upper.pieces[ri];
    if (ri + 1 < upper.pieces.size()) {
      if (const Discontinuity* d = jump_at(upper, p.x1)) {
        emit_vertical(curve, d->x, d->y_plus, d->y_minus,
                      BoundaryElement::Kind::FreeVertical, el);
      }
    }
    el.push_back({BoundaryElement::Kind::CurveArc, Point2(p.x1, p.y1),
                  Point2(p.x0, p.y0)});
  }
  emit_vertical(curve, t.x_left, upper.left_limit(), lower.left_limit(),
                t.left_kind == EndpointKind::Free
                    ? BoundaryElement::Kind::EndVertical
                    : BoundaryElement::Kind::FreeVertical,
                el);

  sweep.upper = std::move(upper);
  sweep.lower = std::move(lower);
  return sweep;
}

}  // namespace jsweep
