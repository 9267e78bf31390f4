#include "jsweep/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace jsweep {

namespace {

constexpr double kMinFreeFactor = 10.0;

}  // namespace

int FrontierBoundary::add(double x, Interval span, SweptSide side, int node) {
  const int id = static_cast<int>(segs_.size());
  segs_.push_back({id, x, span, side, node, true});
  by_x_[x].push_back(id);
  if (span.length() > min_len_) ++actionable_;
  return id;
}

void FrontierBoundary::kill(int id) {
  FreeSeg& s = segs_[id];
  if (!s.alive) return;
  s.alive = false;
  if (s.span.length() > min_len_) --actionable_;
}

std::vector<int> FrontierBoundary::alive_at(double x, double tol) const {
  std::vector<int> out;
  for (auto it = by_x_.lower_bound(x - tol);
       it != by_x_.end() && it->first <= x + tol; ++it) {
    for (int id : it->second) {
      if (segs_[id].alive) out.push_back(id);
    }
  }
  return out;
}

int FrontierBoundary::nearest_crossing(double y, double px, double limit,
                                       bool going_left, double eps,
                                       int exclude_id) const {
  auto blocks = [&](int id) {
    const FreeSeg& s = segs_[id];
    return s.alive && id != exclude_id && s.span.lo < y - eps &&
           s.span.hi > y + eps;
  };
  if (going_left) {
    auto it = by_x_.lower_bound(px - eps);
    while (it != by_x_.begin()) {
      --it;
      if (it->first <= limit) break;
      for (int id : it->second) {
        if (blocks(id)) return id;
      }
    }
  } else {
    for (auto it = by_x_.upper_bound(px + eps);
         it != by_x_.end() && it->first < limit; ++it) {
      for (int id : it->second) {
        if (blocks(id)) return id;
      }
    }
  }
  return -1;
}

std::size_t FrontierBoundary::alive_count(double min_len) const {
  std::size_t n = 0;
  for (const FreeSeg& s : segs_) {
    if (s.alive && s.span.length() > min_len) ++n;
  }
  return n;
}

double FrontierBoundary::total_free_length() const {
  double total = 0.0;
  for (const FreeSeg& s : segs_) {
    if (s.alive) total += s.span.length();
  }
  return total;
}

ExtensionSite select_extension_site(const FrontierBoundary& frontier,
                                    int seg_id, double eps_min) {
  const FreeSeg& s = frontier.seg(seg_id);
  if (s.span.length() <= eps_min) {
    throw SegmentTooShort("frontier segment below minimum actionable length");
  }
  ExtensionSite site;
  site.segment_id = seg_id;
  site.p = Point2(s.x, s.span.mid());
  site.direction = s.swept_side == SweptSide::Left
                       ? ExtensionSite::Direction::Right
                       : ExtensionSite::Direction::Left;
  return site;
}

HorizontalFreeSegment propose_extension_segment(const ClosedPolyline& curve,
                                                const FrontierBoundary& frontier,
                                                const ExtensionSite& site,
                                                double eps_min,
                                                double cap_fraction) {
  const double eps = curve.eps();
  const double px = site.p.x();
  const double py = site.p.y();
  const bool going_left = site.direction == ExtensionSite::Direction::Left;

  // First curve contact in the extension direction. Contacts within eps of
  // the site count as immediate obstructions (NoRoom below), not as absent:
  // the free sliver past the site can be thinner than the tolerance.
  double stop = going_left ? -kInf : kInf;
  bool stop_on_curve = false;
  for (const HitRecord& r : curve.horizontal_hits(py).records) {
    if (going_left) {
      if (r.hi < px + eps && r.hi > stop) {
        stop = std::min(r.hi, px);
        stop_on_curve = true;
      }
    } else {
      if (r.lo > px - eps && r.lo < stop) {
        stop = std::max(r.lo, px);
        stop_on_curve = true;
      }
    }
  }

  // A frontier vertical crossing the path blocks it first: the region past
  // it is already swept, so the extension stops flush against it.
  const int blocker = frontier.nearest_crossing(py, px, stop, going_left, eps,
                                                site.segment_id);
  if (blocker >= 0) {
    stop = frontier.seg(blocker).x;
    stop_on_curve = false;
  }

  if (!std::isfinite(stop)) {
    throw UnboundedSweep("extension segment escapes to infinity");
  }
  double room = std::abs(stop - px);
  // Below kMinFreeFactor * eps a sweep base would be degenerate, so treat
  // that as "no room" regardless of eps_min.
  if (room <= std::max(eps_min, kMinFreeFactor * eps)) {
    throw NoRoom("no room to extend past the frontier segment");
  }
  bool capped = false;
  if (cap_fraction > 0.0 && cap_fraction < 1.0) {
    room *= cap_fraction;
    capped = true;
    stop = going_left ? px - room : px + room;
  }

  HorizontalFreeSegment t;
  t.y = py;
  const EndpointKind far_kind =
      (stop_on_curve && !capped) ? EndpointKind::OnCurve : EndpointKind::Free;
  if (going_left) {
    t.x_left = stop;
    t.x_right = px;
    t.left_kind = far_kind;
    t.right_kind = EndpointKind::Free;
  } else {
    t.x_left = px;
    t.x_right = stop;
    t.left_kind = EndpointKind::Free;
    t.right_kind = far_kind;
  }
  return t;
}

SpliceResult splice(FrontierBoundary& fb, const ExtensionSite& site,
                    const HorizontalSweep& new_sweep, int new_node,
                    double eps) {
  SpliceResult result;
  const double xtol = 2.0 * eps;

  for (const SweepVertical& v : new_sweep.free_verticals) {
    std::vector<Interval> remaining = {v.span};
    for (int id : fb.alive_at(v.x, xtol)) {
      const FreeSeg old = fb.seg(id);
      const Interval ov{std::max(old.span.lo, v.span.lo),
                        std::min(old.span.hi, v.span.hi)};
      if (ov.hi - ov.lo <= eps) continue;
      if (old.swept_side == v.swept_side) {
        throw SpliceMismatch(
            "new sweep vertical overlaps a same-side frontier segment");
      }
      // Overlap window becomes interior: swept region now on both sides.
      result.bridges.push_back({old.node, new_node, old.x, ov});
      if (id == site.segment_id) result.consumed_overlap += ov.length();
      fb.kill(id);
      for (const Interval& part :
           subtract_intervals(old.span, {ov}, kMinFreeFactor * eps)) {
        result.created_ids.push_back(
            fb.add(old.x, part, old.swept_side, old.node));
      }
      std::vector<Interval> next;
      for (const Interval& base : remaining) {
        for (const Interval& part : subtract_intervals(base, {ov}, eps)) {
          next.push_back(part);
        }
      }
      remaining = std::move(next);
    }
    for (const Interval& part : remaining) {
      if (part.length() > kMinFreeFactor * eps) {
        result.created_ids.push_back(
            fb.add(v.x, part, v.swept_side, new_node));
      }
    }
  }

  if (result.consumed_overlap <= eps) {
    throw SpliceMismatch(
        "extension sweep did not attach to the originating frontier segment");
  }
  return result;
}

namespace {

// Oriented boundary piece with the region on its left.
struct Piece {
  BoundaryElement el;
  int node = -1;
  bool used = false;
};

// Vertical boundary segments of the union of trapezoids at one shared x:
// the symmetric difference of left-side and right-side coverage.
void vertical_pieces_at(const std::vector<std::pair<Interval, bool>>& cover,
                        std::vector<std::pair<Interval, SweptSide>>& out) {
  std::vector<double> ys;
  for (const auto& [iv, right] : cover) {
    ys.push_back(iv.lo);
    ys.push_back(iv.hi);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  Interval open{0.0, 0.0};
  SweptSide open_side = SweptSide::Left;
  bool has_open = false;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const double ym = 0.5 * (ys[i] + ys[i + 1]);
    bool cov_l = false, cov_r = false;
    for (const auto& [iv, right] : cover) {
      if (iv.lo < ym && ym < iv.hi) (right ? cov_r : cov_l) = true;
    }
    if (cov_l == cov_r) {
      if (has_open) out.push_back({open, open_side});
      has_open = false;
      continue;
    }
    const SweptSide side = cov_l ? SweptSide::Left : SweptSide::Right;
    if (has_open && side == open_side && open.hi == ys[i]) {
      open.hi = ys[i + 1];
    } else {
      if (has_open) out.push_back({open, open_side});
      open = {ys[i], ys[i + 1]};
      open_side = side;
      has_open = true;
    }
  }
  if (has_open) out.push_back({open, open_side});
}

std::vector<Piece> boundary_pieces(const std::vector<Trapezoid>& trapezoids,
                                   double eps) {
  std::vector<Piece> pieces;
  for (const Trapezoid& tz : trapezoids) {
    // Region below the top, above the bottom: orient with interior on the
    // left of travel.
    pieces.push_back({{BoundaryElement::Kind::CurveArc,
                       Point2(tz.x1, tz.top_y1), Point2(tz.x0, tz.top_y0)},
                      tz.node,
                      false});
    pieces.push_back({{BoundaryElement::Kind::CurveArc,
                       Point2(tz.x0, tz.bot_y0), Point2(tz.x1, tz.bot_y1)},
                      tz.node,
                      false});
  }

  // Group trapezoid sides by x (tolerant), take per-x symmetric difference.
  struct Side {
    double x;
    Interval span;
    bool right;  // trapezoid lies to the right of this side
    int node;
  };
  std::vector<Side> sides;
  for (const Trapezoid& tz : trapezoids) {
    sides.push_back({tz.x0, {tz.bot_y0, tz.top_y0}, true, tz.node});
    sides.push_back({tz.x1, {tz.bot_y1, tz.top_y1}, false, tz.node});
  }
  std::sort(sides.begin(), sides.end(),
            [](const Side& a, const Side& b) { return a.x < b.x; });
  std::size_t i = 0;
  while (i < sides.size()) {
    std::size_t j = i + 1;
    while (j < sides.size() && sides[j].x - sides[j - 1].x <= 2.0 * eps) ++j;
    const double x = sides[i].x;
    std::vector<std::pair<Interval, bool>> cover;
    for (std::size_t k = i; k < j; ++k) {
      cover.push_back({sides[k].span, sides[k].right});
    }
    std::vector<std::pair<Interval, SweptSide>> verts;
    vertical_pieces_at(cover, verts);
    for (const auto& [span, side] : verts) {
      // Region on the left of travel: swept-left verticals run upward,
      // swept-right verticals run downward.
      int node = -1;
      for (std::size_t k = i; k < j; ++k) {
        if (sides[k].span.lo <= span.mid() && span.mid() <= sides[k].span.hi) {
          node = sides[k].node;
          break;
        }
      }
      Piece p;
      p.el.kind = BoundaryElement::Kind::FreeVertical;
      p.node = node;
      if (side == SweptSide::Left) {
        p.el.a = Point2(x, span.lo);
        p.el.b = Point2(x, span.hi);
      } else {
        p.el.a = Point2(x, span.hi);
        p.el.b = Point2(x, span.lo);
      }
      pieces.push_back(p);
    }
    i = j;
  }
  return pieces;
}

// Stitches oriented pieces into closed loops by following matching
// endpoints; records the worst junction gap and any chain that fails to
// close.
std::vector<std::vector<int>> stitch_loops(const std::vector<Piece>& pieces,
                                           double match_tol, double& max_gap,
                                           int& open_chains) {
  std::vector<std::vector<int>> loops;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t start = 0; start < pieces.size(); ++start) {
    if (used[start]) continue;
    std::vector<int> loop = {static_cast<int>(start)};
    used[start] = true;
    Point2 cursor = pieces[start].el.b;
    const Point2 origin = pieces[start].el.a;
    while (true) {
      int best = -1;
      double best_d = match_tol;
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (used[k]) continue;
        const double d = (pieces[k].el.a - cursor).norm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
      if (best < 0) break;
      max_gap = std::max(max_gap, best_d);
      used[best] = true;
      loop.push_back(best);
      cursor = pieces[best].el.b;
    }
    const double closure = (cursor - origin).norm();
    if (closure > match_tol) {
      ++open_chains;
      max_gap = std::max(max_gap, closure);
    } else {
      max_gap = std::max(max_gap, closure);
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

bool shares_endpoint(const BoundaryElement& a, const BoundaryElement& b,
                     double tol) {
  for (const Point2* p : {&a.a, &a.b}) {
    for (const Point2* q : {&b.a, &b.b}) {
      if ((*p - *q).norm() <= tol) return true;
    }
  }
  return false;
}

bool proper_crossing(const BoundaryElement& a, const BoundaryElement& b) {
  const double o1 = orient2d(a.a, a.b, b.a);
  const double o2 = orient2d(a.a, a.b, b.b);
  const double o3 = orient2d(b.a, b.b, a.a);
  const double o4 = orient2d(b.a, b.b, a.b);
  return ((o1 > 0) != (o2 > 0)) && o1 != 0 && o2 != 0 && ((o3 > 0) != (o4 > 0)) &&
         o3 != 0 && o4 != 0;
}

int count_self_intersections(const std::vector<BoundaryElement>& els,
                             double tol) {
  // Spatial hash on element bounding boxes keeps this near-linear for the
  // large fractal runs.
  double minx = kInf, miny = kInf, maxx = -kInf, maxy = -kInf;
  double max_len = 0.0;
  for (const BoundaryElement& e : els) {
    minx = std::min({minx, e.a.x(), e.b.x()});
    maxx = std::max({maxx, e.a.x(), e.b.x()});
    miny = std::min({miny, e.a.y(), e.b.y()});
    maxy = std::max({maxy, e.a.y(), e.b.y()});
    max_len = std::max(max_len, (e.b - e.a).norm());
  }
  if (els.size() < 2) return 0;
  const double cell = std::max(max_len, 1e-12);
  auto key = [&](int ix, int iy) {
    return (static_cast<long long>(ix) << 32) ^ (iy & 0xffffffffLL);
  };
  std::unordered_map<long long, std::vector<int>> grid;
  for (std::size_t k = 0; k < els.size(); ++k) {
    const BoundaryElement& e = els[k];
    const int ix0 = static_cast<int>(std::floor((std::min(e.a.x(), e.b.x()) - minx) / cell));
    const int ix1 = static_cast<int>(std::floor((std::max(e.a.x(), e.b.x()) - minx) / cell));
    const int iy0 = static_cast<int>(std::floor((std::min(e.a.y(), e.b.y()) - miny) / cell));
    const int iy1 = static_cast<int>(std::floor((std::max(e.a.y(), e.b.y()) - miny) / cell));
    for (int ix = ix0; ix <= ix1; ++ix) {
      for (int iy = iy0; iy <= iy1; ++iy) {
        grid[key(ix, iy)].push_back(static_cast<int>(k));
      }
    }
  }
  std::unordered_set<long long> checked;
  int crossings = 0;
  for (const auto& [cell_key, ids] : grid) {
    for (std::size_t u = 0; u < ids.size(); ++u) {
      for (std::size_t v = u + 1; v < ids.size(); ++v) {
        const int a = std::min(ids[u], ids[v]);
        const int b = std::max(ids[u], ids[v]);
        if (!checked.insert((static_cast<long long>(a) << 32) | b).second) {
          continue;
        }
        if (shares_endpoint(els[a], els[b], 3.0 * tol)) continue;
        if (proper_crossing(els[a], els[b])) ++crossings;
      }
    }
  }
  return crossings;
}

}  // namespace

BoundaryDiagnostics validate_elements(const std::vector<BoundaryElement>& loop,
                                      double eps) {
  BoundaryDiagnostics d;
  d.element_count = loop.size();
  d.loops = loop.empty() ? 0 : 1;
  if (loop.empty()) return d;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point2& b = loop[i].b;
    const Point2& a_next = loop[(i + 1) % loop.size()].a;
    d.max_gap = std::max(d.max_gap, (b - a_next).norm());
  }
  if (d.max_gap > 100.0 * eps) d.open_chains = 1;
  d.self_intersections = count_self_intersections(loop, eps);
  return d;
}

std::vector<std::vector<BoundaryElement>> trace_boundary(
    const std::vector<Trapezoid>& trapezoids, double eps) {
  const std::vector<Piece> pieces = boundary_pieces(trapezoids, eps);
  double max_gap = 0.0;
  int open_chains = 0;
  const auto loops =
      stitch_loops(pieces, 100.0 * eps, max_gap, open_chains);
  std::vector<std::vector<BoundaryElement>> out;
  for (const auto& loop : loops) {
    std::vector<BoundaryElement> els;
    for (int k : loop) els.push_back(pieces[k].el);
    out.push_back(std::move(els));
  }
  return out;
}

BoundaryDiagnostics validate_boundary(const ClosedPolyline& curve,
                                      const std::vector<Trapezoid>& trapezoids,
                                      const FrontierBoundary& frontier) {
  const double eps = curve.eps();
  BoundaryDiagnostics d;
  const std::vector<Piece> pieces = boundary_pieces(trapezoids, eps);
  d.element_count = pieces.size();
  const auto loops = stitch_loops(pieces, 100.0 * eps, d.max_gap, d.open_chains);
  d.loops = static_cast<int>(loops.size());

  std::vector<BoundaryElement> all;
  all.reserve(pieces.size());
  for (const Piece& p : pieces) all.push_back(p.el);
  d.self_intersections = count_self_intersections(all, eps);

  // Every live frontier segment must keep its interior clear of the curve.
  for (const FreeSeg& s : frontier.segs()) {
    if (!s.alive || s.span.length() <= kMinFreeFactor * eps) continue;
    const Interval inner{s.span.lo + 2.0 * eps, s.span.hi - 2.0 * eps};
    if (inner.hi <= inner.lo) continue;
    for (const HitRecord& r : curve.vertical_hits(s.x).records) {
      if (r.hi > inner.lo && r.lo < inner.hi) {
        ++d.clearance_violations;
        break;
      }
    }
  }
  return d;
}

std::string boundary_to_json(const ClosedPolyline& curve,
                             const std::vector<Trapezoid>& trapezoids,
                             const FrontierBoundary& frontier) {
  const double eps = curve.eps();
  const std::vector<Piece> pieces = boundary_pieces(trapezoids, eps);
  double max_gap = 0.0;
  int open_chains = 0;
  const auto loops = stitch_loops(pieces, 100.0 * eps, max_gap, open_chains);

  auto is_free_vertical = [&](const Piece& p) {
    if (p.el.kind != BoundaryElement::Kind::FreeVertical) return false;
    const double x = p.el.a.x();
    const Interval span{std::min(p.el.a.y(), p.el.b.y()),
                        std::max(p.el.a.y(), p.el.b.y())};
    for (const FreeSeg& s : frontier.segs()) {
      if (!s.alive || std::abs(s.x - x) > 2.0 * eps) continue;
      if (overlap_length(s.span, span) > 0.5 * span.length()) return true;
    }
    return false;
  };

  nlohmann::json doc;
  doc["loops"] = nlohmann::json::array();
  for (const auto& loop : loops) {
    nlohmann::json jl = nlohmann::json::array();
    for (int k : loop) {
      const Piece& p = pieces[k];
      const char* kind = "curve_arc";
      if (p.el.kind == BoundaryElement::Kind::FreeVertical) {
        kind = is_free_vertical(p) ? "free_vertical" : "curve_arc";
      }
      jl.push_back({{"kind", kind},
                    {"a", {p.el.a.x(), p.el.a.y()}},
                    {"b", {p.el.b.x(), p.el.b.y()}},
                    {"node", p.node}});
    }
    doc["loops"].push_back(std::move(jl));
  }
  doc["max_gap"] = max_gap;
  doc["open_chains"] = open_chains;
  return doc.dump(2);
}

}  // namespace jsweep
