#include "jsweep/engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <nlohmann/json.hpp>

namespace jsweep {

namespace {

double resolve_eps_min(const ClosedPolyline& curve, const EnginePolicy& policy) {
  if (policy.eps_min > 0.0) return policy.eps_min;
  return 1e-6 * curve.bounds().diagonal();
}

// Which of the two vertex arcs (split at the leftmost and rightmost
// vertices) an edge belongs to.
std::vector<int> edge_arcs(const ClosedPolyline& curve, int i_min, int i_max) {
  const int n = static_cast<int>(curve.size());
  std::vector<int> arc(n, 2);
  for (int e = i_min; e != i_max; e = (e + 1) % n) arc[e] = 1;
  return arc;
}

int arc_of_point(const ClosedPolyline& curve, const std::vector<int>& arc,
                 const Point2& p, double tol) {
  int found = 0;
  for (int e : curve.edges_in_xrange(p.x() - tol, p.x() + tol)) {
    if (point_segment_distance(p, curve.edge_a(e), curve.edge_b(e)) > tol) {
      continue;
    }
    if (found == 0) {
      found = arc[e];
    } else if (found != arc[e]) {
      return 0;  // ambiguous: both arcs meet here
    }
  }
  return found;
}

int nearest_arc_of_point(const ClosedPolyline& curve,
                         const std::vector<int>& arc, const Point2& p,
                         double window) {
  int best = 0;
  double best_d = kInf;
  for (int e : curve.edges_in_xrange(p.x() - window, p.x() + window)) {
    const double d = point_segment_distance(p, curve.edge_a(e), curve.edge_b(e));
    if (d < best_d) {
      best_d = d;
      best = arc[e];
    }
  }
  return best;
}

bool point_in_state(const SweepState& s, const Point2& p, double tol) {
  return s.grid.find(s.trapezoids, p, tol) >= 0;
}

void validate_extension(const SweepState& state,
                        const HorizontalFreeSegment& t) {
  const ClosedPolyline& curve = *state.curve;
  const double eps = curve.eps();
  const double lo = t.x_left + 3.0 * eps;
  const double hi = t.x_right - 3.0 * eps;
  if (hi <= lo) return;

  // Exact crossing test: an edge strictly straddling the sweep line with
  // its crossing inside the open part of t would mean the first-hit scan
  // missed a contact. Proximity alone is not an error — near sharp corners
  // the curve legitimately hugs the line within tolerance.
  for (int e : curve.edges_in_xrange(lo, hi)) {
    const Point2& a = curve.edge_a(e);
    const Point2& b = curve.edge_b(e);
    const double da = a.y() - t.y;
    const double db = b.y() - t.y;
    if (std::abs(da) <= eps || std::abs(db) <= eps) continue;
    if ((da > 0.0) == (db > 0.0)) continue;
    const double x = a.x() + (b.x() - a.x()) * da / (da - db);
    if (x > lo && x < hi) {
      throw SpliceMismatch("extension segment crosses the curve");
    }
  }

  const int samples = 16;
  for (int k = 1; k < samples; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / samples;
    if (point_in_state(state, Point2(x, t.y), -eps)) {
      throw SpliceMismatch("extension segment re-enters swept region");
    }
  }
}

// Suspect chain ending at `node_id`: a root-descending run of sweeps whose
// generating segments stay long (> eps_min) while both the area gains and
// the site x-increments decay geometrically in a fixed direction — the
// signature of extensions converging on a vertical line they never reach.
// Returns empty chain if not suspect.
std::vector<int> suspect_chain(const SweepState& state, int node_id,
                               const EnginePolicy& policy) {
  constexpr double kDecay = 0.7;
  constexpr int kMinRun = 8;
  const double eps_min = state.eps_min;

  // Ancestor walk, newest first.
  std::vector<int> line;
  for (int u = node_id;
       u >= 0 && state.nodes[u].parent >= 0 &&
       static_cast<int>(line.size()) < policy.ray_guard_window;
       u = state.nodes[u].parent) {
    line.push_back(u);
  }
  if (static_cast<int>(line.size()) < kMinRun + 1) return {};

  std::vector<int> chain = {line[0]};
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const SweepNode& child = state.nodes[line[i]];
    const SweepNode& parent = state.nodes[line[i + 1]];
    const double dx_child = child.site_x - parent.site_x;
    if (child.site_len <= eps_min || parent.site_len <= eps_min) break;
    // Scale-invariant gain: area relative to the generating segment's
    // length squared. Self-similar refinement keeps this roughly constant;
    // a ray stalling before a vertical line drives it to zero while the
    // segments stay long.
    const double g_child = child.area / (child.site_len * child.site_len);
    const double g_parent = parent.area / (parent.site_len * parent.site_len);
    if (g_child > kDecay * g_parent) break;
    if (i + 2 < line.size()) {
      const double dx_parent =
          parent.site_x - state.nodes[line[i + 2]].site_x;
      if (dx_child * dx_parent <= 0.0) break;  // direction flipped
      if (std::abs(dx_child) > kDecay * std::abs(dx_parent)) break;
    }
    chain.push_back(line[i + 1]);
    if (static_cast<int>(chain.size()) > kMinRun) break;
  }
  if (static_cast<int>(chain.size()) <= kMinRun) return {};
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool uses_heap(QueueOrder order) {
  return order == QueueOrder::LargestFirst ||
         order == QueueOrder::LeftmostFirst;
}

void enqueue(SweepState& state, const EnginePolicy& policy, int id) {
  state.queue.push_back(id);
  if (uses_heap(policy.order)) {
    const FreeSeg& s = state.frontier.seg(id);
    const double key = policy.order == QueueOrder::LargestFirst
                           ? s.span.length()
                           : -s.x;
    state.heap.emplace_back(key, id);
    std::push_heap(state.heap.begin(), state.heap.end());
  }
}

}  // namespace

void TrapezoidGrid::reset(const BoundingBox& box, int resolution) {
  const double w = std::max(box.max.x() - box.min.x(), 1e-12);
  const double h = std::max(box.max.y() - box.min.y(), 1e-12);
  const double cell = std::max(w, h) / resolution;
  x0_ = box.min.x();
  y0_ = box.min.y();
  inv_cell_ = 1.0 / cell;
  nx_ = static_cast<int>(std::ceil(w * inv_cell_)) + 1;
  ny_ = static_cast<int>(std::ceil(h * inv_cell_)) + 1;
  cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
}

void TrapezoidGrid::insert(const Trapezoid& tz, int index) {
  const double ylo = std::min(tz.bot_y0, tz.bot_y1);
  const double yhi = std::max(tz.top_y0, tz.top_y1);
  const auto clampi = [](int v, int hi) { return std::clamp(v, 0, hi); };
  const int ix0 = clampi(static_cast<int>((tz.x0 - x0_) * inv_cell_), nx_ - 1);
  const int ix1 = clampi(static_cast<int>((tz.x1 - x0_) * inv_cell_), nx_ - 1);
  const int iy0 = clampi(static_cast<int>((ylo - y0_) * inv_cell_), ny_ - 1);
  const int iy1 = clampi(static_cast<int>((yhi - y0_) * inv_cell_), ny_ - 1);
  for (int ix = ix0; ix <= ix1; ++ix) {
    for (int iy = iy0; iy <= iy1; ++iy) {
      cells_[static_cast<std::size_t>(ix) * ny_ + iy].push_back(index);
    }
  }
}

int TrapezoidGrid::find(const std::vector<Trapezoid>& traps, const Point2& p,
                        double tol) const {
  if (cells_.empty()) return -1;
  const int ix =
      std::clamp(static_cast<int>((p.x() - x0_) * inv_cell_), 0, nx_ - 1);
  const int iy =
      std::clamp(static_cast<int>((p.y() - y0_) * inv_cell_), 0, ny_ - 1);
  for (int id : cells_[static_cast<std::size_t>(ix) * ny_ + iy]) {
    if (traps[id].contains(p, tol)) return id;
  }
  return -1;
}

Point2 find_root_point(const ClosedPolyline& curve, std::string& method) {
  const double eps = curve.eps();
  const int n = static_cast<int>(curve.size());
  int i_min = 0, i_max = 0;
  for (int i = 1; i < n; ++i) {
    const Point2& v = curve.vertex(i);
    const Point2& lo = curve.vertex(i_min);
    const Point2& hi = curve.vertex(i_max);
    if (v.x() < lo.x() || (v.x() == lo.x() && v.y() < lo.y())) i_min = i;
    if (v.x() > hi.x() || (v.x() == hi.x() && v.y() > hi.y())) i_max = i;
  }
  const std::vector<int> arc = edge_arcs(curve, i_min, i_max);
  const double xl = 0.5 * (curve.vertex(i_min).x() + curve.vertex(i_max).x());

  const LineHits hits = curve.vertical_hits(xl);
  const auto& recs = hits.records;
  auto try_gaps = [&](auto classify) -> std::optional<Point2> {
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
      const Interval gap{recs[k].hi, recs[k + 1].lo};
      if (gap.length() <= 10.0 * eps) continue;
      const int a_low = classify(Point2(xl, recs[k].hi));
      const int a_high = classify(Point2(xl, recs[k + 1].lo));
      if (a_low != 0 && a_high != 0 && a_low != a_high) {
        return Point2(xl, gap.mid());
      }
    }
    return std::nullopt;
  };

  if (auto p = try_gaps([&](const Point2& q) {
        return arc_of_point(curve, arc, q, 2.0 * eps);
      })) {
    method = "two-arc";
    return *p;
  }
  // Contact points where both arcs meet classify as ambiguous above; retry
  // with nearest-edge membership which always commits to one arc.
  if (auto p = try_gaps([&](const Point2& q) {
        return nearest_arc_of_point(curve, arc, q, 0.25 * curve.bounds().diagonal());
      })) {
    method = "two-arc-nearest";
    return *p;
  }

  // Last resort: the vertex centroid, accepted only if it sits in free
  // space with bounded maximal segments through it.
  Point2 c(0.0, 0.0);
  for (int i = 0; i < n; ++i) c += curve.vertex(i);
  c /= static_cast<double>(n);
  if (!curve.near_curve(c, 10.0 * eps)) {
    try {
      if (open_segment_at(curve, c).finite() &&
          horizontal_segment_at(curve, c).finite()) {
        method = "centroid";
        return c;
      }
    } catch (const PointOnCurve&) {
    }
  }
  throw RootNotFound("no interior seed point identified on the splitting line");
}

Point2 find_root_point(const ClosedPolyline& curve) {
  std::string method;
  return find_root_point(curve, method);
}

SweepState make_initial_state(std::shared_ptr<const ClosedPolyline> curve,
                              const Point2& root, const EnginePolicy& policy) {
  SweepState state;
  state.curve = std::move(curve);
  state.root = root;
  state.eps_min = resolve_eps_min(*state.curve, policy);
  state.frontier.set_min_len(state.eps_min);

  state.grid.reset(state.curve->bounds());
  HorizontalFreeSegment t0 = horizontal_segment_at(*state.curve, root);
  if (!t0.finite()) {
    throw UnboundedSweep("initial horizontal segment is unbounded");
  }
  if (policy.extension_cap_fraction > 0.0 &&
      policy.extension_cap_fraction < 1.0) {
    const double f = policy.extension_cap_fraction;
    t0.x_left = root.x() - f * (root.x() - t0.x_left);
    t0.x_right = root.x() + f * (t0.x_right - root.x());
    t0.left_kind = EndpointKind::Free;
    t0.right_kind = EndpointKind::Free;
  }

  const HorizontalSweep sweep = build_sweep(*state.curve, t0);
  SweepNode node;
  node.id = 0;
  node.parent = -1;
  node.t = sweep.t;
  node.area = sweep.area;
  node.site_x = root.x();
  node.trap_begin = 0;
  node.trap_end = sweep.trapezoids.size();
  state.nodes.push_back(node);
  for (Trapezoid tz : sweep.trapezoids) {
    tz.node = 0;
    state.grid.insert(tz, static_cast<int>(state.trapezoids.size()));
    state.trapezoids.push_back(tz);
  }
  for (const SweepVertical& v : sweep.free_verticals) {
    enqueue(state, policy, state.frontier.add(v.x, v.span, v.swept_side, 0));
  }
  state.total_area = sweep.area;
  state.area_history.push_back(state.total_area);
  state.steps = 1;  // the root sweep counts as a step
  return state;
}

namespace {

// Pops the next live frontier segment id per policy, or -1.
int pop_segment(SweepState& state, const EnginePolicy& policy) {
  auto& q = state.queue;
  auto live = [&](int id) { return id >= 0 && state.frontier.seg(id).alive; };
  switch (policy.order) {
    case QueueOrder::FIFO: {
      while (state.queue_head < q.size()) {
        int id = q[state.queue_head];
        q[state.queue_head] = -1;
        ++state.queue_head;
        if (live(id)) return id;
      }
      return -1;
    }
    case QueueOrder::LIFO: {
      while (q.size() > state.queue_head) {
        const int id = q.back();
        q.pop_back();
        if (live(id)) return id;
      }
      return -1;
    }
    case QueueOrder::LargestFirst:
    case QueueOrder::LeftmostFirst: {
      while (!state.heap.empty()) {
        const int id = state.heap.front().second;
        std::pop_heap(state.heap.begin(), state.heap.end());
        state.heap.pop_back();
        if (live(id)) return id;
      }
      return -1;
    }
  }
  return -1;
}

// Extends from the given frontier segment and splices the sweep in.
// Returns the id of the created node, or -1 when the segment was retired
// for lack of room.
int apply_extension(SweepState& state, const EnginePolicy& policy, int seg_id,
                    double cap_fraction) {
  const ClosedPolyline& curve = *state.curve;
  const FreeSeg seg = state.frontier.seg(seg_id);
  const ExtensionSite site =
      select_extension_site(state.frontier, seg_id, state.eps_min);
  HorizontalFreeSegment t;
  try {
    t = propose_extension_segment(curve, state.frontier, site, state.eps_min,
                                  cap_fraction);
  } catch (const NoRoom&) {
    // Sub-resolution sliver ahead: nothing actionable remains here.
    state.frontier.kill(seg_id);
    return -1;
  }
  if (policy.validate_extensions) validate_extension(state, t);

  const HorizontalSweep sweep = build_sweep(curve, t);
  const int node_id = static_cast<int>(state.nodes.size());
  const SpliceResult spliced =
      splice(state.frontier, site, sweep, node_id, curve.eps());

  SweepNode node;
  node.id = node_id;
  node.parent = seg.node;
  node.t = sweep.t;
  node.area = sweep.area;
  node.site_x = seg.x;
  node.site_len = seg.span.length();
  node.trap_begin = state.trapezoids.size();
  node.trap_end = node.trap_begin + sweep.trapezoids.size();
  state.nodes.push_back(node);

  for (Trapezoid tz : sweep.trapezoids) {
    tz.node = node_id;
    state.grid.insert(tz, static_cast<int>(state.trapezoids.size()));
    state.trapezoids.push_back(tz);
  }
  for (const Bridge& b : spliced.bridges) state.bridges.push_back(b);
  for (int id : spliced.created_ids) enqueue(state, policy, id);
  state.total_area += sweep.area;
  state.area_history.push_back(state.total_area);
  ++state.steps;
  return node_id;
}

void guard_and_remediate(SweepState& state, const EnginePolicy& policy,
                         int node_id) {
  if (policy.ray_guard_window <= 0) return;
  const std::vector<int> chain = suspect_chain(state, node_id, policy);
  if (chain.empty()) return;

  RayDiagnostic diag;
  diag.verdict = RayDiagnostic::Verdict::NonTerminatingSuspected;
  diag.chain = chain;
  diag.x_estimate = state.nodes[node_id].site_x;
  diag.at_step = state.steps;

  // Remediation: re-extend from the newest long frontier segment of the
  // suspect node with the cap disabled, letting the sweep reach its true
  // obstruction.
  int target = -1;
  double target_len = state.eps_min;
  for (const FreeSeg& s : state.frontier.segs()) {
    if (!s.alive || s.node != node_id) continue;
    if (s.span.length() > target_len) {
      target_len = s.span.length();
      target = s.id;
    }
  }
  if (target >= 0) {
    const int new_node = apply_extension(state, policy, target, 0.0);
    diag.remediated = new_node >= 0;
    diag.limiting_span = state.frontier.seg(target).span;
  }
  state.diagnostics.push_back(std::move(diag));
}

}  // namespace

StepOutcome step(SweepState& state, const EnginePolicy& policy) {
  const int seg_id = pop_segment(state, policy);
  if (seg_id < 0) throw QueueEmpty("no frontier segments left to process");
  const FreeSeg& seg = state.frontier.seg(seg_id);
  if (seg.span.length() <= state.eps_min) return StepOutcome::Retired;

  const int node_id =
      apply_extension(state, policy, seg_id, policy.extension_cap_fraction);
  if (node_id < 0) return StepOutcome::Retired;
  guard_and_remediate(state, policy, node_id);
  return StepOutcome::Applied;
}

SweepState run_sweep(std::shared_ptr<const ClosedPolyline> curve,
                     const Point2& root, const EnginePolicy& policy) {
  SweepState state = make_initial_state(std::move(curve), root, policy);
  while (!state.maximal()) {
    if (state.steps >= policy.max_steps) {
      state.step_limit_hit = true;
      break;
    }
    step(state, policy);
  }
  return state;
}

SweepState run_sweep(std::shared_ptr<const ClosedPolyline> curve,
                     const EnginePolicy& policy) {
  std::string method;
  const Point2 root = find_root_point(*curve, method);
  SweepState state = run_sweep(std::move(curve), root, policy);
  state.root_method = method;
  return state;
}

std::vector<RayDiagnostic> ray_guard(const SweepState& state,
                                     const EnginePolicy& policy) {
  std::vector<RayDiagnostic> out;
  const int n = static_cast<int>(state.nodes.size());
  const int from = std::max(0, n - policy.ray_guard_window);
  for (int u = from; u < n; ++u) {
    const std::vector<int> chain = suspect_chain(state, u, policy);
    if (chain.empty()) continue;
    RayDiagnostic d;
    d.verdict = RayDiagnostic::Verdict::NonTerminatingSuspected;
    d.chain = chain;
    d.x_estimate = state.nodes[u].site_x;
    d.at_step = state.steps;
    out.push_back(std::move(d));
  }
  return out;
}

bool sweeps_equivalent(const SweepState& a, const SweepState& b,
                       std::uint64_t seed, int samples) {
  if (!a.maximal() || !b.maximal()) {
    throw NotMaximal("equivalence requires both sweeps to be maximal");
  }
  const double scale = std::max(std::abs(a.total_area), std::abs(b.total_area));
  if (std::abs(a.total_area - b.total_area) > 1e-9 * std::max(scale, 1e-300)) {
    return false;
  }
  const BoundingBox box = a.curve->bounds();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.min.x(), box.max.x());
  std::uniform_real_distribution<double> uy(box.min.y(), box.max.y());
  const double skip_tol =
      10.0 * std::max(a.curve->eps(), b.curve->eps());
  for (int k = 0; k < samples; ++k) {
    const Point2 p(ux(rng), uy(rng));
    if (a.curve->near_curve(p, skip_tol) || b.curve->near_curve(p, skip_tol)) {
      continue;  // boundary-ambiguous sample
    }
    if (point_in_state(a, p, 0.0) != point_in_state(b, p, 0.0)) return false;
  }
  return true;
}

ClosedPolyline invert_curve(const ClosedPolyline& curve, const Point2& center,
                            int samples_per_edge) {
  const double eps = curve.eps();
  if (curve.distance_to(center) <= 10.0 * eps) {
    throw CenterOnCurve("inversion center too close to the curve");
  }
  auto invert = [&](const Point2& p) -> Point2 {
    const Point2 d = p - center;
    return d / d.squaredNorm();
  };

  BoundingBox image_box;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    image_box.expand(invert(curve.vertex(static_cast<int>(i))));
  }
  const double tol = 10.0 * 1e-9 * image_box.diagonal();

  std::vector<Point2> pts;
  auto emit = [&](const Point2& q) {
    if (!pts.empty() && (q - pts.front()).norm() <= tol) return;
    if (!pts.empty() && (q - pts.back()).norm() <= tol) return;
    pts.push_back(q);
  };
  // Refines [a, b] (original coordinates) until the image chord tracks the
  // true image within tol; emits image points of the half-open interval.
  auto refine = [&](auto&& self, const Point2& a, const Point2& b,
                    int depth) -> void {
    const Point2 fa = invert(a);
    const Point2 fb = invert(b);
    const Point2 m = 0.5 * (a + b);
    if (depth >= 16 ||
        point_segment_distance(invert(m), fa, fb) < tol) {
      emit(fa);
      return;
    }
    self(self, a, m, depth + 1);
    self(self, m, b, depth + 1);
  };
  for (std::size_t e = 0; e < curve.size(); ++e) {
    const Point2& a = curve.edge_a(static_cast<int>(e));
    const Point2& b = curve.edge_b(static_cast<int>(e));
    for (int k = 0; k < samples_per_edge; ++k) {
      const double t0 = static_cast<double>(k) / samples_per_edge;
      const double t1 = static_cast<double>(k + 1) / samples_per_edge;
      refine(refine, a + t0 * (b - a), a + t1 * (b - a), 0);
    }
  }
  if (pts.size() < 3) {
    throw NonSimpleImage("inverted image collapsed below three vertices");
  }
  try {
    return ClosedPolyline(std::move(pts));
  } catch (const NonSimpleCurve& e) {
    throw NonSimpleImage(std::string("inverted image is not simple: ") +
                         e.what());
  }
}

ExteriorState exterior_sweep(const ClosedPolyline& curve, const Point2& center,
                             const EnginePolicy& policy) {
  ExteriorState ext;
  ext.center = center;
  ext.inverted = std::make_shared<ClosedPolyline>(
      invert_curve(curve, center));
  ext.state = run_sweep(ext.inverted, policy);
  return ext;
}

std::string policy_name(QueueOrder order) {
  switch (order) {
    case QueueOrder::FIFO:
      return "fifo";
    case QueueOrder::LIFO:
      return "lifo";
    case QueueOrder::LargestFirst:
      return "largest";
    case QueueOrder::LeftmostFirst:
      return "leftmost";
  }
  return "unknown";
}

std::string report_json(const SweepState& state, const EnginePolicy& policy) {
  nlohmann::json doc;
  doc["steps"] = state.steps;
  doc["total_area"] = state.total_area;
  doc["frontier_remaining"] = state.frontier.alive_count(state.eps_min);
  doc["area_history"] = state.area_history;
  doc["policy"] = policy_name(policy.order);
  doc["eps_min"] = state.eps_min;
  nlohmann::json diags = nlohmann::json::array();
  for (const RayDiagnostic& d : state.diagnostics) {
    diags.push_back(
        {{"verdict", d.verdict == RayDiagnostic::Verdict::NonTerminatingSuspected
                         ? "non_terminating_suspected"
                         : "terminating"},
         {"x_estimate", d.x_estimate},
         {"chain_length", d.chain.size()},
         {"at_step", d.at_step},
         {"remediated", d.remediated}});
  }
  doc["ray_diagnostics"] = std::move(diags);
  doc["maximal"] = state.maximal();
  doc["step_limit_hit"] = state.step_limit_hit;
  return doc.dump(2);
}

}  // namespace jsweep
