#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jsweep/oracle.hpp"
#include "jsweep/segment.hpp"
#include "jsweep/sweep.hpp"
#include "support.hpp"

using namespace jsweep;
using jsweep::testing::make_cshape;
using jsweep::testing::make_square;

TEST_CASE("square: constant profiles, one trapezoid, pure curve boundary") {
  const ClosedPolyline sq = make_square();
  const HorizontalFreeSegment t = horizontal_segment_at(sq, {0.5, 0.5});
  const HorizontalSweep sweep = build_sweep(sq, t);

  CHECK(sweep.upper.eval(0.3) == doctest::Approx(1.0));
  CHECK(sweep.upper.eval(0.9) == doctest::Approx(1.0));
  CHECK(sweep.lower.eval(0.5) == doctest::Approx(0.0));
  CHECK(sweep.upper.jumps.empty());
  CHECK(sweep.lower.jumps.empty());

  REQUIRE(sweep.trapezoids.size() == 1);
  CHECK(sweep.area == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sweep.free_verticals.empty());

  // The boundary is the square itself: four curve arcs, nothing free.
  CHECK(sweep.boundary.elements.size() == 4);
  for (const BoundaryElement& e : sweep.boundary.elements) {
    CHECK(e.kind == BoundaryElement::Kind::CurveArc);
  }
}

TEST_CASE("triangle: piecewise-linear upper profile matches the oracle") {
  const ClosedPolyline tri({{0, 0}, {2, 0}, {1, 2}});
  const HorizontalFreeSegment t = horizontal_segment_at(tri, {1.0, 0.5});
  CHECK(t.x_left == doctest::Approx(0.25));
  CHECK(t.x_right == doctest::Approx(1.75));
  auto [upper, lower] = compute_profiles(tri, t);
  CHECK(upper.jumps.empty());
  CHECK(lower.jumps.empty());
  for (int i = 1; i < 1000; ++i) {
    const double x = t.x_left + (t.x_right - t.x_left) * i / 1000.0;
    const oracle::BruteSegment b =
        oracle::brute_force_open_segment(tri.vertices(), {x, 0.5}, tri.eps());
    REQUIRE(b.low);
    REQUIRE(b.high);
    CHECK(upper.eval(x) == doctest::Approx(*b.high).epsilon(1e-9));
    CHECK(lower.eval(x) == doctest::Approx(*b.low).epsilon(1e-9));
  }
}

TEST_CASE("C-shape: jump at the notch, two trapezoids, one free vertical") {
  const ClosedPolyline c = make_cshape();
  const HorizontalFreeSegment t = horizontal_segment_at(c, {0.5, 0.5});
  const HorizontalSweep sweep = build_sweep(c, t);

  CHECK(sweep.upper.eval(1.0) == doctest::Approx(1.0));
  CHECK(sweep.upper.eval(2.5) == doctest::Approx(3.0));
  CHECK(sweep.lower.eval(1.5) == doctest::Approx(0.0));
  REQUIRE(sweep.upper.jumps.size() == 1);
  const Discontinuity& d = sweep.upper.jumps[0];
  CHECK(d.x == doctest::Approx(2.0));
  CHECK(d.y_minus == doctest::Approx(1.0));
  CHECK(d.y_plus == doctest::Approx(3.0));
  // The vertical curve edge occupies [1,2]; only (2,3) stays free.
  REQUIRE(d.free_parts.size() == 1);
  CHECK(d.free_parts[0].lo == doctest::Approx(2.0));
  CHECK(d.free_parts[0].hi == doctest::Approx(3.0));

  REQUIRE(sweep.trapezoids.size() == 2);
  CHECK(sweep.trapezoids[0].area() == doctest::Approx(2.0));
  CHECK(sweep.trapezoids[1].area() == doctest::Approx(3.0));
  CHECK(sweep.area == doctest::Approx(5.0).epsilon(1e-12));

  REQUIRE(sweep.free_verticals.size() == 1);
  const SweepVertical& v = sweep.free_verticals[0];
  CHECK(v.x == doctest::Approx(2.0));
  CHECK(v.span.lo == doctest::Approx(2.0));
  CHECK(v.span.hi == doctest::Approx(3.0));
  CHECK(v.swept_side == SweptSide::Right);

  int free_elements = 0;
  for (const BoundaryElement& e : sweep.boundary.elements) {
    if (e.kind == BoundaryElement::Kind::FreeVertical) {
      ++free_elements;
      CHECK(e.a.x() == doctest::Approx(2.0));
    }
  }
  CHECK(free_elements == 1);
}

TEST_CASE("detect_discontinuities: constant profile and staircase") {
  const ClosedPolyline sq = make_square();
  auto [upper, lower] =
      compute_profiles(sq, horizontal_segment_at(sq, {0.5, 0.5}));
  CHECK(detect_discontinuities(upper, sq).empty());

  // Three-step staircase descending to the right; the sweep along the base
  // sees jumps at the two interior step x-coordinates.
  const ClosedPolyline stairs({{0, 0}, {3, 0}, {3, 1}, {2, 1},
                               {2, 2}, {1, 2}, {1, 3}, {0, 3}});
  const HorizontalSweep sweep =
      build_sweep(stairs, horizontal_segment_at(stairs, {1.5, 0.5}));
  REQUIRE(sweep.upper.jumps.size() == 2);
  CHECK(sweep.upper.jumps[0].x == doctest::Approx(1.0));
  CHECK(sweep.upper.jumps[1].x == doctest::Approx(2.0));
  CHECK(sweep.area == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("trapezoids tile the region between the profiles") {
  const ClosedPolyline c = make_cshape();
  const HorizontalSweep sweep =
      build_sweep(c, horizontal_segment_at(c, {0.5, 0.5}));
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ux(0.0, 3.0);
  std::uniform_real_distribution<double> uy(0.0, 3.0);
  const double margin = 1e-6;
  for (int i = 0; i < 10000; ++i) {
    const Point2 q(ux(rng), uy(rng));
    // Membership from the profiles directly.
    const bool in_region = q.x() > margin && q.x() < 3.0 - margin &&
                           q.y() > sweep.lower.eval(q.x()) + margin &&
                           q.y() < sweep.upper.eval(q.x()) - margin &&
                           std::abs(q.x() - 2.0) > margin;
    int hits = 0;
    for (const Trapezoid& tz : sweep.trapezoids) {
      if (tz.contains(q, -margin / 2)) ++hits;
    }
    CHECK(hits == (in_region ? 1 : 0));
  }
}

TEST_CASE("free verticals have endpoints on the curve and clear interiors") {
  const ClosedPolyline stairs({{0, 0}, {3, 0}, {3, 1}, {2, 1},
                               {2, 2}, {1, 2}, {1, 3}, {0, 3}});
  const HorizontalSweep sweep =
      build_sweep(stairs, horizontal_segment_at(stairs, {1.5, 0.5}));
  const double tol = 10 * stairs.eps();
  for (const SweepVertical& v : sweep.free_verticals) {
    CHECK(stairs.distance_to({v.x, v.span.lo}) <= tol);
    CHECK(stairs.distance_to({v.x, v.span.hi}) <= tol);
    CHECK(stairs.distance_to({v.x, v.span.mid()}) > tol);
  }
}

TEST_CASE("sweep errors") {
  const ClosedPolyline sq = make_square();
  // Base segment crossing the curve.
  HorizontalFreeSegment bad{0.5, -0.5, 0.5, EndpointKind::Free,
                            EndpointKind::Free};
  CHECK_THROWS_AS(compute_profiles(sq, bad), SegmentTouchesCurve);
  // Degenerate base segment.
  HorizontalFreeSegment tiny{0.5, 0.5, 0.5 + 1e-12, EndpointKind::Free,
                             EndpointKind::Free};
  CHECK_THROWS_AS(compute_profiles(sq, tiny), EmptySegment);
  // Base segment in free space above the square: no hits above.
  HorizontalFreeSegment above{2.0, 0.2, 0.8, EndpointKind::Free,
                              EndpointKind::Free};
  CHECK_THROWS_AS(compute_profiles(sq, above), UnboundedSweep);
}

TEST_CASE("koch(1) sweep area agrees with Monte-Carlo membership") {
  const ClosedPolyline k1 = koch_snowflake(1);
  // Through the base triangle's centroid.
  const Point2 centroid(0.5, std::sqrt(3.0) / 6.0);
  const HorizontalFreeSegment t = horizontal_segment_at(k1, centroid);
  const HorizontalSweep sweep = build_sweep(k1, t);

  // A point is swept iff its x lies in int(t) and the point sits inside the
  // vertical free chord through (x, t.y), reconstructed by the brute oracle.
  const BoundingBox& box = k1.bounds();
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ux(box.min.x(), box.max.x());
  std::uniform_real_distribution<double> uy(box.min.y(), box.max.y());
  const int n = 400000;
  long long inside = 0;
  for (int i = 0; i < n; ++i) {
    const Point2 q(ux(rng), uy(rng));
    if (q.x() <= t.x_left || q.x() >= t.x_right) continue;
    oracle::BruteSegment b;
    try {
      b = oracle::brute_force_open_segment(k1.vertices(), {q.x(), t.y},
                                           k1.eps());
    } catch (const PointOnCurve&) {
      continue;
    }
    if (b.low && b.high && q.y() > *b.low && q.y() < *b.high) ++inside;
  }
  const double box_area =
      (box.max.x() - box.min.x()) * (box.max.y() - box.min.y());
  const double estimate = box_area * static_cast<double>(inside) / n;
  CHECK(std::abs(sweep.area - estimate) < 0.01);
}
