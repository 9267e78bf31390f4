#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jsweep/oracle.hpp"
#include "jsweep/segment.hpp"
#include "support.hpp"

using namespace jsweep;
using jsweep::testing::make_cshape;
using jsweep::testing::make_square;

TEST_CASE("open segment inside the unit square") {
  const ClosedPolyline sq = make_square();
  const OpenSegment s = open_segment_at(sq, {0.5, 0.5});
  CHECK(s.x == doctest::Approx(0.5));
  CHECK(s.y_low == doctest::Approx(0.0));
  CHECK(s.y_high == doctest::Approx(1.0));
  CHECK(s.low_kind == EndpointKind::OnCurve);
  CHECK(s.high_kind == EndpointKind::OnCurve);
  CHECK(s.finite());
}

TEST_CASE("open segment above the square is half-infinite") {
  const OpenSegment s = open_segment_at(make_square(), {0.5, 2.0});
  CHECK(s.y_low == doctest::Approx(1.0));
  CHECK(s.low_kind == EndpointKind::OnCurve);
  CHECK(s.high_kind == EndpointKind::Infinite);
  CHECK(!s.finite());
}

TEST_CASE("open segment in the C-shape's lower bar") {
  const OpenSegment s = open_segment_at(make_cshape(), {1.5, 0.5});
  CHECK(s.y_low == doctest::Approx(0.0));
  CHECK(s.y_high == doctest::Approx(1.0));
}

TEST_CASE("points on the curve are rejected") {
  const ClosedPolyline c = make_cshape();
  CHECK_THROWS_AS(open_segment_at(c, {1.5, 0.0}), PointOnCurve);
  // On the vertical edge x=2, y in [1,2] (EdgeOverlap case).
  CHECK_THROWS_AS(open_segment_at(c, {2.0, 1.5}), PointOnCurve);
  CHECK_THROWS_AS(horizontal_segment_at(c, {2.0, 1.5}), PointOnCurve);
}

TEST_CASE("horizontal segments") {
  const ClosedPolyline sq = make_square();
  const HorizontalFreeSegment hs = horizontal_segment_at(sq, {0.5, 0.5});
  CHECK(hs.x_left == doctest::Approx(0.0));
  CHECK(hs.x_right == doctest::Approx(1.0));

  const ClosedPolyline c = make_cshape();
  const HorizontalFreeSegment low = horizontal_segment_at(c, {0.5, 0.5});
  CHECK(low.x_left == doctest::Approx(0.0));
  CHECK(low.x_right == doctest::Approx(3.0));
  // Above the notch the free segment still spans the full width.
  const HorizontalFreeSegment high = horizontal_segment_at(c, {0.5, 2.5});
  CHECK(high.x_left == doctest::Approx(0.0));
  CHECK(high.x_right == doctest::Approx(3.0));
  // At notch height the interior is only the right column.
  const HorizontalFreeSegment bar = horizontal_segment_at(c, {2.5, 1.5});
  CHECK(bar.x_left == doctest::Approx(2.0));
  CHECK(bar.x_right == doctest::Approx(3.0));
  // Inside the notch itself the segment escapes to the left.
  const HorizontalFreeSegment notch = horizontal_segment_at(c, {0.5, 1.5});
  CHECK(notch.left_kind == EndpointKind::Infinite);
  CHECK(notch.x_right == doctest::Approx(2.0));
}

TEST_CASE("query point lies strictly inside its segment") {
  const ClosedPolyline c = make_cshape();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.5, 3.5);
  for (int i = 0; i < 300; ++i) {
    const Point2 q(u(rng), u(rng));
    if (c.near_curve(q, 10 * c.eps())) continue;
    const OpenSegment s = open_segment_at(c, q);
    CHECK(s.y_low < q.y());
    CHECK(s.y_high > q.y());
  }
}

TEST_CASE("maximality: nudging a finite endpoint lands on the curve") {
  const ClosedPolyline c = make_cshape();
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 2.95);
  for (int i = 0; i < 200; ++i) {
    const Point2 q(u(rng), u(rng));
    if (c.near_curve(q, 10 * c.eps())) continue;
    const OpenSegment s = open_segment_at(c, q);
    const double tol = 10 * c.eps();
    if (s.low_kind == EndpointKind::OnCurve) {
      CHECK(c.distance_to({s.x, s.y_low}) <= tol);
    }
    if (s.high_kind == EndpointKind::OnCurve) {
      CHECK(c.distance_to({s.x, s.y_high}) <= tol);
    }
    // No hit may sit strictly inside the open interior.
    for (const HitRecord& r : c.vertical_hits(s.x).records) {
      const bool inside = r.hi > s.y_low + tol && r.lo < s.y_high - tol;
      CHECK(!inside);
    }
  }
}

TEST_CASE("agreement with the brute-force oracle on random polygons") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<Point2> poly =
        jsweep::testing::random_simple_polygon(rng, 4 + trial % 21);
    const ClosedPolyline curve(poly);
    std::uniform_real_distribution<double> ux(curve.bounds().min.x() - 0.2,
                                              curve.bounds().max.x() + 0.2);
    std::uniform_real_distribution<double> uy(curve.bounds().min.y() - 0.2,
                                              curve.bounds().max.y() + 0.2);
    for (int i = 0; i < 50; ++i) {
      const Point2 q(ux(rng), uy(rng));
      if (curve.near_curve(q, 100 * curve.eps())) continue;
      const OpenSegment s = open_segment_at(curve, q);
      const oracle::BruteSegment b =
          oracle::brute_force_open_segment(poly, q, curve.eps());
      if (b.low) {
        CHECK(s.y_low == doctest::Approx(*b.low).epsilon(1e-9));
      } else {
        CHECK(s.low_kind == EndpointKind::Infinite);
      }
      if (b.high) {
        CHECK(s.y_high == doctest::Approx(*b.high).epsilon(1e-9));
      } else {
        CHECK(s.high_kind == EndpointKind::Infinite);
      }
    }
  }
}
