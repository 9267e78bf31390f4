#include "jsweep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jsweep::oracle {

namespace {

bool point_near_loop(std::span<const Point2> poly, const Point2& q,
                     double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (squared_point_segment_distance(q, poly[i], poly[(i + 1) % n]) <=
        tol * tol) {
      return true;
    }
  }
  return false;
}

}  // namespace

OracleVerdict raycast_point_in_polygon(std::span<const Point2> poly,
                                       const Point2& q, double tol) {
  OracleVerdict v;
  if (point_near_loop(poly, q, tol)) {
    v.on_boundary = true;
    return v;
  }
  const std::size_t n = poly.size();
  // Try ray directions until none passes near a vertex.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double angle = 0.5881 + attempt * 0.7310;  // arbitrary irrational-ish
    const Point2 dir(std::cos(angle), std::sin(angle));
    bool degenerate = false;
    int crossings = 0;
    for (std::size_t i = 0; i < n && !degenerate; ++i) {
      const Point2 a = poly[i] - q;
      const Point2 b = poly[(i + 1) % n] - q;
      // Coordinates in the (dir, normal) frame.
      const double an = -dir.y() * a.x() + dir.x() * a.y();
      const double bn = -dir.y() * b.x() + dir.x() * b.y();
      if (std::abs(an) <= tol || std::abs(bn) <= tol) {
        degenerate = true;
        break;
      }
      if ((an > 0.0) == (bn > 0.0)) continue;
      const double t = an / (an - bn);
      const double along =
          (dir.x() * a.x() + dir.y() * a.y()) * (1.0 - t) +
          (dir.x() * b.x() + dir.y() * b.y()) * t;
      if (std::abs(along) <= tol) {
        degenerate = true;
        break;
      }
      if (along > 0.0) ++crossings;
    }
    if (!degenerate) {
      v.inside = (crossings % 2) == 1;
      return v;
    }
  }
  // Every direction grazed a vertex; treat as boundary contact.
  v.on_boundary = true;
  return v;
}

double shoelace_area(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

SimplicityReport simplicity_check(std::span<const Point2> poly, double tol) {
  SimplicityReport report;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Point2& c = poly[j];
      const Point2& d = poly[(j + 1) % n];
      if (segments_intersect(a, b, c, d, tol)) {
        report.simple = false;
        report.edge_a = static_cast<int>(i);
        report.edge_b = static_cast<int>(j);
        return report;
      }
    }
  }
  return report;
}

BruteSegment brute_force_open_segment(std::span<const Point2> poly,
                                      const Point2& p, double tol) {
  if (point_near_loop(poly, p, tol)) {
    throw PointOnCurve("brute_force_open_segment: point lies on the curve");
  }
  BruteSegment seg;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double xlo = std::min(a.x(), b.x());
    const double xhi = std::max(a.x(), b.x());
    if (p.x() < xlo - tol || p.x() > xhi + tol) continue;
    std::vector<double> ys;
    if (xhi - xlo <= tol) {
      // Vertical edge on the query line.
      ys = {a.y(), b.y()};
    } else if (p.x() >= xlo && p.x() <= xhi) {
      const double t = (p.x() - a.x()) / (b.x() - a.x());
      ys = {a.y() + t * (b.y() - a.y())};
    } else {
      // Within tol of an endpoint: take the nearer endpoint's y.
      ys = {std::abs(p.x() - a.x()) < std::abs(p.x() - b.x()) ? a.y() : b.y()};
    }
    for (double y : ys) {
      if (y < p.y()) {
        if (!seg.low || y > *seg.low) seg.low = y;
      } else if (y > p.y()) {
        if (!seg.high || y < *seg.high) seg.high = y;
      }
    }
  }
  return seg;
}

BruteSegment brute_force_horizontal_segment(std::span<const Point2> poly,
                                            const Point2& p, double tol) {
  std::vector<Point2> swapped(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    swapped[i] = Point2(poly[i].y(), poly[i].x());
  }
  return brute_force_open_segment(swapped, Point2(p.y(), p.x()), tol);
}

double monte_carlo_area(std::span<const Point2> poly, std::uint64_t seed,
                        int samples, double tol) {
  BoundingBox box;
  for (const Point2& v : poly) box.expand(v);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.min.x(), box.max.x());
  std::uniform_real_distribution<double> uy(box.min.y(), box.max.y());
  long long inside = 0;
  for (int i = 0; i < samples; ++i) {
    const Point2 q(ux(rng), uy(rng));
    if (raycast_point_in_polygon(poly, q, tol).inside) ++inside;
  }
  const double box_area =
      (box.max.x() - box.min.x()) * (box.max.y() - box.min.y());
  return box_area * static_cast<double>(inside) / samples;
}

}  // namespace jsweep::oracle
