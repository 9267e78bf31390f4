#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "jsweep/curve.hpp"
#include "jsweep/oracle.hpp"
#include "support.hpp"

using namespace jsweep;
using jsweep::testing::cshape_vertices;
using jsweep::testing::make_cshape;
using jsweep::testing::make_square;

TEST_CASE("load_curve parses the three spec formats") {
  const ClosedPolyline sq = load_curve(
      R"({"type":"polyline","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  CHECK(sq.size() == 4);
  CHECK(sq.bounds().max.x() == doctest::Approx(1.0));
  CHECK(sq.simplicity_checked());

  const ClosedPolyline koch = load_curve(R"({"type":"koch","level":2})");
  CHECK(koch.size() == 3 * 16);

  const ClosedPolyline gon = load_curve(
      R"({"type":"regular","n":4,"radius":1,"center":[0,0]})");
  CHECK(gon.size() == 4);
  for (const Point2& v : gon.vertices()) {
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("load_curve reorients clockwise input to counterclockwise") {
  const ClosedPolyline cw = load_curve(
      R"({"type":"polyline","vertices":[[0,1],[1,1],[1,0],[0,0]]})");
  double twice = 0.0;
  for (std::size_t i = 0; i < cw.size(); ++i) {
    twice += cw.edge_a(i).x() * cw.edge_b(i).y() -
             cw.edge_b(i).x() * cw.edge_a(i).y();
  }
  CHECK(twice > 0.0);
}

TEST_CASE("constructor rejects bad loops") {
  CHECK_THROWS_AS(ClosedPolyline({{0, 0}, {1, 0}}), TooFewVertices);
  CHECK_THROWS_AS(ClosedPolyline({{0, 0}, {0, 0}, {1, 1}}), DegenerateEdge);
  // Bowtie: edges 0 and 2 cross.
  CHECK_THROWS_AS(ClosedPolyline({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                  NonSimpleCurve);
}

TEST_CASE("koch generator counts and closed-form area") {
  CHECK(koch_snowflake(0).size() == 3);
  const ClosedPolyline k1 = koch_snowflake(1);
  CHECK(k1.size() == 12);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    CHECK((k1.edge_b(i) - k1.edge_a(i)).norm() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  const ClosedPolyline k4 = koch_snowflake(4);
  CHECK(k4.size() == 768);

  // Perimeter 3 * (4/3)^k and the closed-form area, both against the
  // generated polygon.
  double perim = 0.0;
  for (std::size_t i = 0; i < k4.size(); ++i) {
    perim += (k4.edge_b(i) - k4.edge_a(i)).norm();
  }
  CHECK(perim == doctest::Approx(3.0 * std::pow(4.0 / 3.0, 4)).epsilon(1e-12));
  CHECK(oracle::shoelace_area(k4.vertices()) ==
        doctest::Approx(jsweep::testing::snowflake_area(4)).epsilon(1e-12));

  CHECK_THROWS_AS(koch_generate(5, {0, 0}, {1, 0}, {0.5, 0.8}, 1000),
                  LevelTooLarge);
}

TEST_CASE("koch snowflake stays simple up to level 4") {
  for (int level : {2, 3, 4}) {
    const ClosedPolyline k = koch_snowflake(level);
    CHECK(oracle::simplicity_check(k.vertices(), k.eps()).simple);
  }
}

TEST_CASE("vertical hits: unit square") {
  const ClosedPolyline sq = make_square();
  const LineHits h = sq.vertical_hits(0.5);
  REQUIRE(h.records.size() == 2);
  CHECK(h.records[0].lo == doctest::Approx(0.0));
  CHECK(h.records[0].kind == HitKind::Crossing);
  CHECK(h.records[1].lo == doctest::Approx(1.0));
  CHECK(h.records[1].kind == HitKind::Crossing);
}

TEST_CASE("vertical hits: C-shape interior line") {
  const ClosedPolyline c = make_cshape();
  const LineHits h = c.vertical_hits(1.5);
  REQUIRE(h.records.size() == 4);
  const double expect[] = {0.0, 1.0, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(h.records[i].lo == doctest::Approx(expect[i]));
    CHECK(h.records[i].hi == doctest::Approx(expect[i]));
    CHECK(h.records[i].kind == HitKind::Crossing);
  }
}

TEST_CASE("vertical hits: C-shape line with a vertical edge") {
  const ClosedPolyline c = make_cshape();
  const LineHits h = c.vertical_hits(2.0);
  bool overlap_found = false;
  std::set<double> point_ys;
  for (const HitRecord& r : h.records) {
    if (r.kind == HitKind::EdgeOverlap) {
      overlap_found = true;
      CHECK(r.lo == doctest::Approx(1.0));
      CHECK(r.hi == doctest::Approx(2.0));
    } else {
      point_ys.insert(std::round(r.lo * 1e9) / 1e9);
    }
  }
  CHECK(overlap_found);
  CHECK(point_ys.count(0.0) == 1);
  CHECK(point_ys.count(3.0) == 1);
}

TEST_CASE("crossing parity is even away from vertices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<Point2> poly =
        jsweep::testing::random_simple_polygon(rng, 4 + trial % 21);
    const ClosedPolyline curve(poly);
    std::uniform_real_distribution<double> ux(curve.bounds().min.x(),
                                              curve.bounds().max.x());
    for (int i = 0; i < 20; ++i) {
      const double x = ux(rng);
      bool near_vertex = false;
      for (const Point2& v : poly) {
        if (std::abs(v.x() - x) < 100 * curve.eps()) near_vertex = true;
      }
      if (near_vertex) continue;
      int crossings = 0;
      for (const HitRecord& r : curve.vertical_hits(x).records) {
        if (r.kind == HitKind::Crossing) ++crossings;
      }
      CHECK(crossings % 2 == 0);
    }
  }
}

TEST_CASE("remove_degeneracy") {
  SUBCASE("axis-aligned square needs one rotation step") {
    auto [rotated, theta] = remove_degeneracy(make_square());
    CHECK(theta == doctest::Approx(1e-3));
    for (std::size_t i = 0; i < rotated.size(); ++i) {
      const Point2 d = rotated.edge_b(i) - rotated.edge_a(i);
      CHECK(std::abs(d.x()) > 1e-7 * d.norm());
    }
  }
  SUBCASE("curve without vertical edges is unchanged") {
    const ClosedPolyline tri({{0, 0}, {2, 0}, {1, 2}});
    auto [rotated, theta] = remove_degeneracy(tri);
    CHECK(theta == 0.0);
    for (std::size_t i = 0; i < tri.size(); ++i) {
      CHECK((rotated.vertex(i) - tri.vertex(i)).norm() < 1e-15);
    }
  }
  SUBCASE("edge one rotation step shy of vertical forces a second step") {
    // Edge directions: 0, pi/2, pi/2 - delta, ~0. Rotating by delta makes
    // the third edge vertical, so the scan must settle on 2 * delta.
    const double delta = 1e-3;
    const std::vector<Point2> verts = {
        {0.0, 0.0},
        {2.0, 0.0},
        {2.0, 1.0},
        {2.0 - std::sin(delta), 1.0 - std::cos(delta)}};
    auto [rotated, theta] = remove_degeneracy(ClosedPolyline(verts), delta);
    CHECK(theta == doctest::Approx(2.0 * delta));
    for (std::size_t i = 0; i < rotated.size(); ++i) {
      const Point2 d = rotated.edge_b(i) - rotated.edge_a(i);
      const double from_vertical =
          std::abs(std::atan2(d.y(), d.x())) - M_PI / 2.0;
      CHECK(std::abs(from_vertical) >= 1e-6 * 0.99);
    }
  }
}

TEST_CASE("distance_to and near_curve agree with per-edge scan") {
  const ClosedPolyline c = make_cshape();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const Point2 q(u(rng), u(rng));
    double best = kInf;
    for (std::size_t e = 0; e < c.size(); ++e) {
      best = std::min(best, point_segment_distance(q, c.edge_a(e), c.edge_b(e)));
    }
    CHECK(c.distance_to(q) == doctest::Approx(best).epsilon(1e-12));
    CHECK(c.near_curve(q, 0.25) == (best <= 0.25));
  }
}
