#include "jsweep/classify.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace jsweep {

namespace {

// Distance to the curve via the edge index, growing the search window
// until an edge is found; much cheaper than a full edge scan for local
// queries.
double local_curve_distance(const ClosedPolyline& curve, const Point2& p) {
  const double diag = curve.bounds().diagonal();
  double r = std::max(1e4 * curve.eps(), 1e-12);
  while (true) {
    double best = kInf;
    for (int e : curve.edges_in_xrange(p.x() - r, p.x() + r)) {
      best = std::min(best,
                      point_segment_distance(p, curve.edge_a(e), curve.edge_b(e)));
    }
    if (best <= r) return best;
    if (r > diag + std::abs(p.x() - curve.bounds().min.x()) +
                std::abs(p.x() - curve.bounds().max.x())) {
      return best;  // window covers the whole curve in x
    }
    r *= 4.0;
  }
}

}  // namespace

SlabIndex::SlabIndex(const SweepState& state) : traps_(&state.trapezoids) {
  if (state.trapezoids.empty()) {
    throw EmptyState("no swept region to index");
  }
  xs_.reserve(state.trapezoids.size() * 2);
  for (const Trapezoid& tz : state.trapezoids) {
    xs_.push_back(tz.x0);
    xs_.push_back(tz.x1);
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());

  slabs_.assign(xs_.size() - 1, {});
  for (std::size_t k = 0; k < traps_->size(); ++k) {
    const Trapezoid& tz = (*traps_)[k];
    const auto lo = std::lower_bound(xs_.begin(), xs_.end(), tz.x0);
    const auto hi = std::lower_bound(xs_.begin(), xs_.end(), tz.x1);
    for (auto it = lo; it != hi; ++it) {
      slabs_[static_cast<std::size_t>(it - xs_.begin())].push_back(
          static_cast<int>(k));
    }
  }
  for (std::size_t s = 0; s < slabs_.size(); ++s) {
    const double xm = 0.5 * (xs_[s] + xs_[s + 1]);
    std::sort(slabs_[s].begin(), slabs_[s].end(), [&](int a, int b) {
      return (*traps_)[a].bot_at(xm) < (*traps_)[b].bot_at(xm);
    });
  }
}

int SlabIndex::trapezoid_at(const Point2& p, double tol) const {
  if (p.x() < xs_.front() - tol || p.x() > xs_.back() + tol) return -1;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), p.x());
  const long s0 = std::max<long>(0, (it - xs_.begin()) - 1);
  for (long s = std::max<long>(0, s0 - 1);
       s <= std::min<long>(static_cast<long>(slabs_.size()) - 1, s0 + 1); ++s) {
    const auto& slab = slabs_[static_cast<std::size_t>(s)];
    const double xm = std::clamp(p.x(), xs_[s], xs_[s + 1]);
    const auto pos = std::upper_bound(
        slab.begin(), slab.end(), p.y() + tol,
        [&](double y, int id) { return y < (*traps_)[id].bot_at(xm); });
    for (long j = (pos - slab.begin()) - 1;
         j >= 0 && j + 2 >= pos - slab.begin(); --j) {
      const int id = slab[static_cast<std::size_t>(j)];
      if ((*traps_)[id].contains(p, tol)) return id;
    }
  }
  return -1;
}

Classification classify_point(const SlabIndex& index,
                              const ClosedPolyline& curve, const Point2& q,
                              const ExteriorState* exterior) {
  Classification out;
  out.distance_hint = local_curve_distance(curve, q);
  if (out.distance_hint <= curve.eps()) {
    out.verdict = Verdict::OnCurve;
    return out;
  }
  if (index.trapezoid_at(q, curve.eps()) >= 0) {
    out.verdict = Verdict::Interior;
    return out;
  }
  out.verdict = Verdict::Exterior;
  if (!curve.bounds().contains(q, curve.eps())) {
    out.exterior_method = ExteriorMethod::BoundingBox;
    return out;
  }
  if (exterior != nullptr) {
    const Point2 d = q - exterior->center;
    if (d.squaredNorm() > 0.0) {
      const Point2 qi = d / d.squaredNorm();
      const double tol = exterior->inverted->eps();
      for (const Trapezoid& tz : exterior->state.trapezoids) {
        if (tz.contains(qi, tol)) {
          out.exterior_method = ExteriorMethod::InvertedSweep;
          return out;
        }
      }
    }
  }
  out.exterior_method = ExteriorMethod::Complement;
  return out;
}

double interior_area(const SweepState& state) {
  double total = 0.0;
  for (const SweepNode& node : state.nodes) total += node.area;
  return total;
}

namespace {

int locate_trapezoid(const SweepState& state, const Point2& q) {
  for (std::size_t k = 0; k < state.trapezoids.size(); ++k) {
    if (state.trapezoids[k].contains(q, 0.0)) return static_cast<int>(k);
  }
  return -1;
}

// Trapezoid of `node` adjacent to the bridge from the given side, together
// with a safe x offset into it where the bridge midpoint height stays
// strictly inside.
double safe_offset_x(const SweepState& state, int node, const Bridge& b,
                     double tol) {
  const double m = b.span.mid();
  for (const Trapezoid& tz : state.trapezoids) {
    if (tz.node != node) continue;
    const bool at_right = std::abs(tz.x1 - b.x) <= tol;
    const bool at_left = std::abs(tz.x0 - b.x) <= tol;
    if (!at_right && !at_left) continue;
    if (tz.bot_at(std::clamp(b.x, tz.x0, tz.x1)) > m ||
        tz.top_at(std::clamp(b.x, tz.x0, tz.x1)) < m) {
      continue;
    }
    const double sign = at_right ? -1.0 : 1.0;
    double delta = 0.5 * (tz.x1 - tz.x0);
    for (int iter = 0; iter < 64; ++iter) {
      const double x = b.x + sign * delta;
      if (x > tz.x0 && x < tz.x1 && tz.bot_at(x) < m && tz.top_at(x) > m) {
        return x;
      }
      delta *= 0.5;
    }
  }
  throw NoPath("no trapezoid adjacent to a connectivity bridge");
}

}  // namespace

RectilinearPath connectivity_path(const SweepState& state, const Point2& q1,
                                  const Point2& q2) {
  const int t1 = locate_trapezoid(state, q1);
  const int t2 = locate_trapezoid(state, q2);
  if (t1 < 0 || t2 < 0) {
    throw NotInterior("connectivity endpoint outside the swept region");
  }
  const int n1 = state.trapezoids[t1].node;
  const int n2 = state.trapezoids[t2].node;

  // BFS over the sweep adjacency induced by bridges.
  std::vector<int> prev_node(state.nodes.size(), -1);
  std::vector<int> prev_bridge(state.nodes.size(), -1);
  std::vector<bool> seen(state.nodes.size(), false);
  std::queue<int> bfs;
  bfs.push(n1);
  seen[n1] = true;
  while (!bfs.empty() && !seen[n2]) {
    const int u = bfs.front();
    bfs.pop();
    for (std::size_t k = 0; k < state.bridges.size(); ++k) {
      const Bridge& b = state.bridges[k];
      for (const auto& [from, to] : {std::pair{b.node_a, b.node_b},
                                     std::pair{b.node_b, b.node_a}}) {
        if (from == u && !seen[to]) {
          seen[to] = true;
          prev_node[to] = u;
          prev_bridge[to] = static_cast<int>(k);
          bfs.push(to);
        }
      }
    }
  }
  if (!seen[n2]) throw NoPath("swept regions are not connected by bridges");

  std::vector<int> node_path = {n2};
  std::vector<int> bridge_path;
  for (int u = n2; u != n1; u = prev_node[u]) {
    bridge_path.push_back(prev_bridge[u]);
    node_path.push_back(prev_node[u]);
  }
  std::reverse(node_path.begin(), node_path.end());
  std::reverse(bridge_path.begin(), bridge_path.end());

  const double tol = 2.0 * state.curve->eps();
  RectilinearPath path;
  auto push = [&](const Point2& p) {
    if (path.waypoints.empty() ||
        (path.waypoints.back() - p).norm() > 0.0) {
      path.waypoints.push_back(p);
    }
  };
  push(q1);
  Point2 cur = q1;
  for (std::size_t i = 0; i < bridge_path.size(); ++i) {
    const int u = node_path[i];
    const int v = node_path[i + 1];
    const Bridge& b = state.bridges[bridge_path[i]];
    const double yu = state.nodes[u].t.y;
    const double yv = state.nodes[v].t.y;
    const double m = b.span.mid();
    const double xu = safe_offset_x(state, u, b, tol);
    const double xv = safe_offset_x(state, v, b, tol);
    push(Point2(cur.x(), yu));
    push(Point2(xu, yu));
    push(Point2(xu, m));
    push(Point2(xv, m));
    push(Point2(xv, yv));
    cur = Point2(xv, yv);
  }
  const double y_final = state.nodes[n2].t.y;
  push(Point2(cur.x(), y_final));
  push(Point2(q2.x(), y_final));
  push(q2);

  // Count axis-direction changes along the polyline.
  int turns = 0;
  for (std::size_t i = 0; i + 2 < path.waypoints.size(); ++i) {
    const Point2 d1 = path.waypoints[i + 1] - path.waypoints[i];
    const Point2 d2 = path.waypoints[i + 2] - path.waypoints[i + 1];
    const bool v1 = std::abs(d1.x()) <= std::abs(d1.y());
    const bool v2 = std::abs(d2.x()) <= std::abs(d2.y());
    if (v1 != v2) ++turns;
  }
  path.turns = turns;
  return path;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Interior:
      return "interior";
    case Verdict::Exterior:
      return "exterior";
    case Verdict::OnCurve:
      return "on_curve";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string classify_batch_csv(const SlabIndex& index,
                               const ClosedPolyline& curve,
                               const std::vector<Point2>& points,
                               const ExteriorState* exterior) {
  std::ostringstream out;
  out << "x,y,verdict,distance_hint\n";
  out.precision(17);
  for (const Point2& p : points) {
    const Classification c = classify_point(index, curve, p, exterior);
    out << p.x() << ',' << p.y() << ',' << verdict_name(c.verdict) << ','
        << c.distance_hint << '\n';
  }
  return out.str();
}

}  // namespace jsweep
