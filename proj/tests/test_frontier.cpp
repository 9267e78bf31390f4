#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "jsweep/frontier.hpp"
#include "jsweep/segment.hpp"
#include "jsweep/sweep.hpp"
#include "support.hpp"

using namespace jsweep;
using jsweep::testing::make_cshape;
using jsweep::testing::make_square;

TEST_CASE("frontier store: add, kill, lookups, actionable count") {
  FrontierBoundary fb;
  fb.set_min_len(0.1);
  const int a = fb.add(1.0, {0.0, 1.0}, SweptSide::Left, 0);
  const int b = fb.add(1.0, {2.0, 2.05}, SweptSide::Right, 0);
  const int c = fb.add(2.0, {0.0, 3.0}, SweptSide::Left, 1);
  CHECK(fb.alive_count() == 3);
  CHECK(fb.actionable() == 2);  // b is below min_len
  CHECK(fb.total_free_length() == doctest::Approx(1.0 + 0.05 + 3.0));

  const std::vector<int> at1 = fb.alive_at(1.0, 1e-9);
  CHECK(at1.size() == 2);
  fb.kill(a);
  fb.kill(a);  // double kill must be harmless
  CHECK(fb.alive_count() == 2);
  CHECK(fb.actionable() == 1);
  CHECK(fb.alive_at(1.0, 1e-9) == std::vector<int>{b});
  CHECK(fb.seg(c).node == 1);
}

TEST_CASE("nearest_crossing scans in the travel direction only") {
  FrontierBoundary fb;
  const int left = fb.add(0.3, {0.0, 1.0}, SweptSide::Left, 0);
  const int right = fb.add(0.9, {0.0, 1.0}, SweptSide::Left, 0);
  fb.add(0.5, {0.6, 1.0}, SweptSide::Left, 0);  // does not straddle y=0.5
  const double eps = 1e-9;
  CHECK(fb.nearest_crossing(0.5, 0.7, -kInf, true, eps, -1) == left);
  CHECK(fb.nearest_crossing(0.5, 0.7, kInf, false, eps, -1) == right);
  CHECK(fb.nearest_crossing(0.5, 0.7, kInf, false, eps, right) == -1);
  // Segments at or beyond the limit do not block.
  CHECK(fb.nearest_crossing(0.5, 0.7, 0.4, true, eps, -1) == -1);
}

TEST_CASE("extension site: midpoint, away from the swept side") {
  const ClosedPolyline c = make_cshape();
  const HorizontalSweep first =
      build_sweep(c, horizontal_segment_at(c, {0.5, 0.5}));
  REQUIRE(first.free_verticals.size() == 1);

  FrontierBoundary fb;
  const SweepVertical& v = first.free_verticals[0];
  const int id = fb.add(v.x, v.span, v.swept_side, 0);
  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  CHECK(site.p.x() == doctest::Approx(2.0));
  CHECK(site.p.y() == doctest::Approx(2.5));
  CHECK(site.direction == ExtensionSite::Direction::Left);

  // Gate: segments at or below the actionable threshold are rejected.
  const int tiny = fb.add(2.0, {2.0, 2.0 + 1e-7}, SweptSide::Right, 0);
  CHECK_THROWS_AS(select_extension_site(fb, tiny, 1e-6), SegmentTooShort);
}

TEST_CASE("propose_extension_segment stops at the first curve hit") {
  const ClosedPolyline c = make_cshape();
  FrontierBoundary fb;
  const int id = fb.add(2.0, {2.0, 3.0}, SweptSide::Right, 0);
  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  const HorizontalFreeSegment t = propose_extension_segment(c, fb, site, 1e-6);
  CHECK(t.y == doctest::Approx(2.5));
  CHECK(t.x_left == doctest::Approx(0.0));
  CHECK(t.x_right == doctest::Approx(2.0));
  CHECK(t.left_kind == EndpointKind::OnCurve);
  CHECK(t.right_kind == EndpointKind::Free);

  // The open part must avoid both the curve and the swept side.
  for (int i = 1; i < 100; ++i) {
    const Point2 q(t.x_left + (t.x_right - t.x_left) * i / 100.0, t.y);
    CHECK(c.distance_to(q) > 10 * c.eps());
  }
}

TEST_CASE("propose_extension_segment stops flush at a frontier vertical") {
  const ClosedPolyline sq = make_square();
  FrontierBoundary fb;
  const int id = fb.add(0.6, {0.2, 0.8}, SweptSide::Right, 0);
  fb.add(0.3, {0.0, 1.0}, SweptSide::Left, 1);
  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  const HorizontalFreeSegment t = propose_extension_segment(sq, fb, site, 1e-6);
  CHECK(t.x_left == doctest::Approx(0.3));
  CHECK(t.left_kind == EndpointKind::Free);
}

TEST_CASE("propose_extension_segment throws NoRoom when blocked immediately") {
  const ClosedPolyline sq = make_square();
  FrontierBoundary fb;
  const int id = fb.add(0.6, {0.2, 0.8}, SweptSide::Right, 0);
  fb.add(0.599, {0.0, 1.0}, SweptSide::Left, 1);
  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  CHECK_THROWS_AS(propose_extension_segment(sq, fb, site, 0.01), NoRoom);
}

TEST_CASE("splice consumes the site segment and records the bridge") {
  const ClosedPolyline c = make_cshape();
  const HorizontalSweep first =
      build_sweep(c, horizontal_segment_at(c, {0.5, 0.5}));
  FrontierBoundary fb;
  const SweepVertical& v = first.free_verticals[0];
  const int id = fb.add(v.x, v.span, v.swept_side, 0);
  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  const HorizontalFreeSegment t = propose_extension_segment(c, fb, site, 1e-6);
  const HorizontalSweep second = build_sweep(c, t);
  CHECK(second.area == doctest::Approx(2.0).epsilon(1e-12));

  const SpliceResult result = splice(fb, site, second, 1, c.eps());
  CHECK(result.consumed_overlap == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.created_ids.empty());
  REQUIRE(result.bridges.size() == 1);
  CHECK(result.bridges[0].node_a == 0);
  CHECK(result.bridges[0].node_b == 1);
  CHECK(result.bridges[0].x == doctest::Approx(2.0));
  CHECK(result.bridges[0].span.lo == doctest::Approx(2.0));
  CHECK(result.bridges[0].span.hi == doctest::Approx(3.0));

  // The region is complete: no live frontier remains.
  CHECK(fb.alive_count() == 0);

  // A second splice of the same sweep has nothing to consume.
  CHECK_THROWS_AS(splice(fb, site, second, 2, c.eps()), SpliceMismatch);
}

TEST_CASE("splice keeps the unconsumed remainder of the site segment") {
  // Two stacked rooms connected by a doorway on the right; sweeping the
  // lower room leaves a frontier vertical that the upper sweep consumes
  // only partially.
  const ClosedPolyline c = make_cshape();
  FrontierBoundary fb;
  // Pretend the original frontier segment extends below the doorway span.
  const int id = fb.add(2.0, {1.8, 3.0}, SweptSide::Right, 0);
  ExtensionSite site;
  site.segment_id = id;
  site.p = Point2(2.0, 2.5);
  site.direction = ExtensionSite::Direction::Left;
  const HorizontalSweep second = build_sweep(
      c, propose_extension_segment(c, fb, site, 1e-6));
  const SpliceResult result = splice(fb, site, second, 1, c.eps());
  CHECK(result.consumed_overlap == doctest::Approx(1.0).epsilon(1e-9));
  // The (1.8, 2.0) remainder survives under the old owner.
  REQUIRE(result.created_ids.size() == 1);
  const FreeSeg& rest = fb.seg(result.created_ids[0]);
  CHECK(rest.span.lo == doctest::Approx(1.8));
  CHECK(rest.span.hi == doctest::Approx(2.0));
  CHECK(rest.node == 0);
  CHECK(fb.alive_count() == 1);
}

TEST_CASE("validate_elements flags a reversed element") {
  const ClosedPolyline c = make_cshape();
  const HorizontalSweep sweep =
      build_sweep(c, horizontal_segment_at(c, {0.5, 0.5}));
  std::vector<BoundaryElement> loop = sweep.boundary.elements;
  CHECK(validate_elements(loop, 10 * c.eps()).pass(10 * c.eps()));

  std::swap(loop[2].a, loop[2].b);
  const BoundaryDiagnostics bad = validate_elements(loop, 10 * c.eps());
  CHECK(bad.max_gap > 10 * c.eps());
}

TEST_CASE("validate_boundary passes after each C-shape splice") {
  const ClosedPolyline c = make_cshape();
  HorizontalSweep first = build_sweep(c, horizontal_segment_at(c, {0.5, 0.5}));
  FrontierBoundary fb;
  const SweepVertical& v = first.free_verticals[0];
  const int id = fb.add(v.x, v.span, v.swept_side, 0);
  std::vector<Trapezoid> traps = first.trapezoids;

  BoundaryDiagnostics d1 = validate_boundary(c, traps, fb);
  CHECK(d1.pass(10 * c.eps()));

  const ExtensionSite site = select_extension_site(fb, id, 1e-6);
  const HorizontalSweep second =
      build_sweep(c, propose_extension_segment(c, fb, site, 1e-6));
  splice(fb, site, second, 1, c.eps());
  traps.insert(traps.end(), second.trapezoids.begin(),
               second.trapezoids.end());

  BoundaryDiagnostics d2 = validate_boundary(c, traps, fb);
  CHECK(d2.pass(10 * c.eps()));
  // The finished region's boundary carries no free verticals.
  const nlohmann::json dump =
      nlohmann::json::parse(boundary_to_json(c, traps, fb));
  for (const auto& loop : dump["loops"]) {
    for (const auto& e : loop) {
      CHECK(e["kind"] != "free_vertical");
    }
  }
}
