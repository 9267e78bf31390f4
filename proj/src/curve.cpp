#include "jsweep/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "jsweep/oracle.hpp"
#include "json.hpp"

namespace jsweep {

namespace {

// Above this edge count the quadratic simplicity validator is skipped for
// generator outputs (they are simple by construction).
constexpr std::size_t kSimplicityScanCap = 10000;

double signed_area(const std::vector<Point2>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

}  // namespace

ClosedPolyline::ClosedPolyline(std::vector<Point2> vertices, bool validate)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw TooFewVertices("closed polyline needs at least 3 vertices");
  }
  for (const Point2& p : vertices_) {
    if (!p.allFinite()) throw GeometryError("non-finite vertex coordinate");
  }
  for (const Point2& p : vertices_) bounds_.expand(p);
  eps_ = 1e-9 * bounds_.diagonal();
  if (eps_ <= 0.0) throw DegenerateEdge("curve has zero extent");

  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices_[i] - vertices_[(i + 1) % n]).norm() <= eps_) {
      throw DegenerateEdge("zero-length edge at vertex " + std::to_string(i));
    }
  }

  // Reader reorients clockwise input to counterclockwise.
  if (signed_area(vertices_) < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
  }

  if (validate && n <= kSimplicityScanCap) {
    const auto report = oracle::simplicity_check(vertices_, eps_);
    if (!report.simple) {
      throw NonSimpleCurve("self-intersection between edges " +
                           std::to_string(report.edge_a) + " and " +
                           std::to_string(report.edge_b));
    }
    simplicity_checked_ = true;
  }

  std::vector<Interval> xspans(n), yspans(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = edge_a(i);
    const Point2& b = edge_b(i);
    xspans[i] = {std::min(a.x(), b.x()), std::max(a.x(), b.x())};
    yspans[i] = {std::min(a.y(), b.y()), std::max(a.y(), b.y())};
  }
  x_index_ = IntervalIndex(std::move(xspans));
  y_index_ = IntervalIndex(std::move(yspans));
}

std::vector<int> ClosedPolyline::edges_in_xrange(double lo, double hi) const {
  return x_index_.query(lo, hi);
}

LineHits ClosedPolyline::line_hits(int axis, double c) const {
  const double tol = eps_;
  const std::size_t n = vertices_.size();
  auto u = [&](std::size_t i) {
    return axis == 0 ? vertices_[i].x() : vertices_[i].y();
  };
  auto w = [&](std::size_t i) {
    return axis == 0 ? vertices_[i].y() : vertices_[i].x();
  };
  auto sign = [&](std::size_t i) -> int {
    const double d = u(i) - c;
    if (std::abs(d) <= tol) return 0;
    return d < 0.0 ? -1 : 1;
  };

  const std::vector<int> candidates = axis == 0
                                          ? x_index_.query(c - tol, c + tol)
                                          : y_index_.query(c - tol, c + tol);

  LineHits hits;
  hits.coord = c;
  std::unordered_set<std::size_t> on_line_seen;

  for (int e : candidates) {
    const std::size_t i = static_cast<std::size_t>(e);
    const std::size_t j = (i + 1) % n;
    const int si = sign(i);
    const int sj = sign(j);
    if (si != 0 && sj != 0 && si != sj) {
      // Transversal crossing in the edge interior.
      const double t = (c - u(i)) / (u(j) - u(i));
      const double v = w(i) + t * (w(j) - w(i));
      hits.records.push_back({v, v, HitKind::Crossing});
    }
    if (si == 0) on_line_seen.insert(i);
    if (sj == 0) on_line_seen.insert(j);
  }

  // Maximal runs of vertices lying on the line become contact records:
  // a single vertex is a point contact, a longer run is an edge overlap.
  std::unordered_set<std::size_t> visited;
  for (std::size_t v0 : on_line_seen) {
    if (visited.count(v0)) continue;
    std::size_t start = v0;
    for (std::size_t guard = 0; guard < n; ++guard) {
      const std::size_t prev = (start + n - 1) % n;
      if (sign(prev) != 0 || prev == v0) break;
      start = prev;
    }
    std::size_t end = v0;
    for (std::size_t guard = 0; guard < n; ++guard) {
      const std::size_t next = (end + 1) % n;
      if (sign(next) != 0 || next == start) break;
      end = next;
    }
    double wmin = kInf, wmax = -kInf;
    for (std::size_t k = start;; k = (k + 1) % n) {
      visited.insert(k);
      wmin = std::min(wmin, w(k));
      wmax = std::max(wmax, w(k));
      if (k == end) break;
    }
    const int before = sign((start + n - 1) % n);
    const int after = sign((end + 1) % n);
    if (wmax - wmin > tol) {
      hits.records.push_back({wmin, wmax, HitKind::EdgeOverlap});
    } else {
      const HitKind kind =
          before != after ? HitKind::Crossing : HitKind::Touch;
      hits.records.push_back({wmin, wmax, kind});
    }
  }

  std::sort(hits.records.begin(), hits.records.end(),
            [](const HitRecord& a, const HitRecord& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });

  // Coalesce records that touch within tolerance (shared vertices etc.).
  std::vector<HitRecord> merged;
  for (const HitRecord& r : hits.records) {
    if (!merged.empty() && r.lo <= merged.back().hi + tol) {
      HitRecord& m = merged.back();
      m.hi = std::max(m.hi, r.hi);
      if (r.kind == HitKind::EdgeOverlap || m.kind == HitKind::EdgeOverlap) {
        m.kind = HitKind::EdgeOverlap;
      } else if (r.kind == HitKind::Crossing || m.kind == HitKind::Crossing) {
        m.kind = HitKind::Crossing;
      }
    } else {
      merged.push_back(r);
    }
  }
  hits.records = std::move(merged);
  return hits;
}

LineHits ClosedPolyline::vertical_hits(double x) const {
  return line_hits(0, x);
}

LineHits ClosedPolyline::horizontal_hits(double y) const {
  return line_hits(1, y);
}

double ClosedPolyline::distance_to(const Point2& p) const {
  double best = kInf;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best,
                    squared_point_segment_distance(p, edge_a(i), edge_b(i)));
  }
  return std::sqrt(best);
}

bool ClosedPolyline::near_curve(const Point2& p, double tol) const {
  const auto candidates = x_index_.query(p.x() - tol, p.x() + tol);
  for (int e : candidates) {
    if (squared_point_segment_distance(p, edge_a(e), edge_b(e)) <= tol * tol) {
      return true;
    }
  }
  return false;
}

ClosedPolyline koch_generate(int level, const Point2& a, const Point2& b,
                             const Point2& c, std::size_t edge_cap) {
  if (level < 0) throw GeometryError("koch level must be >= 0");
  std::size_t edges = 3;
  for (int k = 0; k < level; ++k) {
    edges *= 4;
    if (edges > edge_cap) {
      throw LevelTooLarge("koch level " + std::to_string(level) +
                          " exceeds edge cap " + std::to_string(edge_cap));
    }
  }

  std::vector<Point2> pts = {a, b, c};
  if (signed_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());

  constexpr double kBumpHeight = std::numbers::sqrt3 / 6.0;
  for (int k = 0; k < level; ++k) {
    std::vector<Point2> next;
    next.reserve(pts.size() * 4);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point2& p = pts[i];
      const Point2& q = pts[(i + 1) % pts.size()];
      const Point2 d = q - p;
      const Point2 outward(d.y(), -d.x());  // right side of a CCW loop
      next.push_back(p);
      next.push_back(p + d / 3.0);
      next.push_back(p + 0.5 * d + kBumpHeight * outward);
      next.push_back(p + 2.0 * d / 3.0);
    }
    pts = std::move(next);
  }
  const bool validate = pts.size() <= kSimplicityScanCap;
  return ClosedPolyline(std::move(pts), validate);
}

ClosedPolyline koch_snowflake(int level) {
  return koch_generate(level, Point2(0.0, 0.0), Point2(1.0, 0.0),
                       Point2(0.5, std::numbers::sqrt3 / 2.0));
}

ClosedPolyline regular_ngon(int n, double radius, const Point2& center) {
  if (n < 3) throw TooFewVertices("regular polygon needs n >= 3");
  if (radius <= 0.0) throw GeometryError("regular polygon needs radius > 0");
  std::vector<Point2> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    pts.emplace_back(center.x() + radius * std::cos(angle),
                     center.y() + radius * std::sin(angle));
  }
  return ClosedPolyline(std::move(pts));
}

std::pair<ClosedPolyline, double> remove_degeneracy(const ClosedPolyline& curve,
                                                    double delta) {
  const std::size_t n = curve.size();
  std::vector<double> directions(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 d = curve.edge_b(i) - curve.edge_a(i);
    directions[i] = std::atan2(d.y(), d.x());
  }
  constexpr double kClearance = 1e-6;
  const int max_candidates =
      static_cast<int>(std::ceil(std::numbers::pi / delta)) + 1;
  for (int m = 0; m < max_candidates; ++m) {
    const double theta = m * delta;
    bool ok = true;
    for (double dir : directions) {
      const double from_vertical =
          std::abs(std::remainder(dir + theta - std::numbers::pi / 2.0,
                                  std::numbers::pi));
      if (from_vertical < kClearance) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (theta == 0.0) return {curve, 0.0};
    const Eigen::Rotation2Dd rot(theta);
    std::vector<Point2> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[i] = rot * curve.vertex(i);
    return {ClosedPolyline(std::move(rotated), /*validate=*/false), theta};
  }
  // Unreachable: finitely many edge directions, each excluding an arc of
  // width 2e-6 rad from a pi-wide candidate range.
  throw GeometryError("remove_degeneracy: no admissible rotation found");
}

namespace {

ClosedPolyline curve_from_json(const nlohmann::json& spec) {
  const std::string type = spec.at("type").get<std::string>();
  if (type == "polyline") {
    std::vector<Point2> pts;
    for (const auto& v : spec.at("vertices")) {
      pts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
    return ClosedPolyline(std::move(pts));
  }
  if (type == "koch") {
    return koch_snowflake(spec.at("level").get<int>());
  }
  if (type == "regular") {
    Point2 center(0.0, 0.0);
    if (spec.contains("center")) {
      center = Point2(spec["center"].at(0).get<double>(),
                      spec["center"].at(1).get<double>());
    }
    return regular_ngon(spec.at("n").get<int>(),
                        spec.at("radius").get<double>(), center);
  }
  throw GeometryError("unknown curve type: " + type);
}

}  // namespace

ClosedPolyline load_curve(const std::string& json_text) {
  return curve_from_json(nlohmann::json::parse(json_text));
}

ClosedPolyline load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open curve file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_curve(buf.str());
}

}  // namespace jsweep
