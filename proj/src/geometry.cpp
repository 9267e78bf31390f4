#include "jsweep/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace jsweep {

std::vector<Interval> subtract_intervals(const Interval& base,
                                         const std::vector<Interval>& holes,
                                         double min_len) {
  std::vector<Interval> sorted = holes;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  double cursor = base.lo;
  for (const Interval& h : sorted) {
    if (h.hi <= cursor) continue;
    if (h.lo >= base.hi) break;
    if (h.lo - cursor > min_len) out.push_back({cursor, std::min(h.lo, base.hi)});
    cursor = std::max(cursor, h.hi);
  }
  if (base.hi - cursor > min_len) out.push_back({cursor, base.hi});
  return out;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c,
                        const Point2& d, double tol) {
  const double o1 = orient2d(a, b, c);
  const double o2 = orient2d(a, b, d);
  const double o3 = orient2d(c, d, a);
  const double o4 = orient2d(c, d, b);
  if (((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0)) &&
      o1 != 0.0 && o2 != 0.0 && o3 != 0.0 && o4 != 0.0) {
    return true;
  }
  const double tol2 = tol * tol;
  if (squared_point_segment_distance(c, a, b) <= tol2) return true;
  if (squared_point_segment_distance(d, a, b) <= tol2) return true;
  if (squared_point_segment_distance(a, c, d) <= tol2) return true;
  if (squared_point_segment_distance(b, c, d) <= tol2) return true;
  return false;
}

IntervalIndex::IntervalIndex(std::vector<Interval> spans)
    : spans_(std::move(spans)) {
  if (spans_.empty()) return;
  std::vector<int> ids(spans_.size());
  std::iota(ids.begin(), ids.end(), 0);
  nodes_.reserve(2 * spans_.size());
  root_ = build(ids);
}

int IntervalIndex::build(std::vector<int>& ids) {
  if (ids.empty()) return -1;
  std::vector<double> mids;
  mids.reserve(ids.size());
  for (int id : ids) mids.push_back(spans_[id].mid());
  auto nth = mids.begin() + mids.size() / 2;
  std::nth_element(mids.begin(), nth, mids.end());
  const double center = *nth;

  std::vector<int> here, left, right;
  for (int id : ids) {
    const Interval& s = spans_[id];
    if (s.hi < center) {
      left.push_back(id);
    } else if (s.lo > center) {
      right.push_back(id);
    } else {
      here.push_back(id);
    }
  }
  // Degenerate split: everything stacked at the center.
  if (here.empty() && (left.empty() || right.empty())) {
    here = left.empty() ? std::move(right) : std::move(left);
    left.clear();
    right.clear();
  }

  const int me = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_[me].center = center;
  nodes_[me].by_lo = here;
  std::sort(nodes_[me].by_lo.begin(), nodes_[me].by_lo.end(),
            [this](int a, int b) { return spans_[a].lo < spans_[b].lo; });
  nodes_[me].by_hi = nodes_[me].by_lo;
  std::sort(nodes_[me].by_hi.begin(), nodes_[me].by_hi.end(),
            [this](int a, int b) { return spans_[a].hi > spans_[b].hi; });

  const int l = build(left);
  const int r = build(right);
  nodes_[me].left = l;
  nodes_[me].right = r;
  return me;
}

void IntervalIndex::query_node(int node, double lo, double hi,
                               std::vector<int>& out) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  if (hi < n.center) {
    // Only spans whose lo reaches below hi can intersect [lo, hi].
    for (int id : n.by_lo) {
      if (spans_[id].lo > hi) break;
      out.push_back(id);
    }
    query_node(n.left, lo, hi, out);
  } else if (lo > n.center) {
    for (int id : n.by_hi) {
      if (spans_[id].hi < lo) break;
      out.push_back(id);
    }
    query_node(n.right, lo, hi, out);
  } else {
    for (int id : n.by_lo) out.push_back(id);
    query_node(n.left, lo, hi, out);
    query_node(n.right, lo, hi, out);
  }
}

void IntervalIndex::query(double lo, double hi, std::vector<int>& out) const {
  query_node(root_, lo, hi, out);
}

}  // namespace jsweep
