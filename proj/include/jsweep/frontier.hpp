#ifndef JSWEEP_FRONTIER_HPP
#define JSWEEP_FRONTIER_HPP

#include <map>
#include <string>
#include <vector>

#include "jsweep/curve.hpp"
#include "jsweep/geometry.hpp"
#include "jsweep/sweep.hpp"

namespace jsweep {

/// One free vertical segment of the frontier: a boundary piece of the swept
/// region that is not on the curve, hence a potential extension site.
/// Segments are immutable once created; any modification kills the segment
/// and re-adds the surviving parts under fresh ids.
struct FreeSeg {
  int id = -1;
  double x = 0.0;
  Interval span;
  SweptSide swept_side = SweptSide::Left;
  int node = -1;  // sweep node whose boundary exposed this segment
  bool alive = true;
};

/// Records that two sweep regions became adjacent along a vertical window;
/// used by connectivity queries to cross between regions.
struct Bridge {
  int node_a = -1;  // owner of the consumed frontier segment
  int node_b = -1;  // newly spliced sweep
  double x = 0.0;
  Interval span;
};

/// The piecewise-vertical frontier of the swept region, kept as the set of
/// its free vertical segments. The full cyclic boundary (curve arcs plus
/// verticals) is derived from the accumulated trapezoids on demand.
class FrontierBoundary {
 public:
  /// Threshold below which live segments do not count as actionable; set
  /// once by the engine before segments are added.
  void set_min_len(double min_len) { min_len_ = min_len; }

  int add(double x, Interval span, SweptSide side, int node);
  void kill(int id);
  const FreeSeg& seg(int id) const { return segs_[id]; }
  const std::vector<FreeSeg>& segs() const { return segs_; }

  /// Ids of live segments within tol of x.
  std::vector<int> alive_at(double x, double tol) const;
  std::size_t alive_count(double min_len = 0.0) const;
  /// Live segments longer than the configured minimum, tracked
  /// incrementally.
  std::size_t actionable() const { return actionable_; }
  double total_free_length() const;

  /// Nearest live segment strictly between px and limit in the travel
  /// direction whose span contains y strictly (by more than eps); -1 if
  /// none blocks the path.
  int nearest_crossing(double y, double px, double limit, bool going_left,
                       double eps, int exclude_id) const;

 private:
  std::vector<FreeSeg> segs_;
  std::map<double, std::vector<int>> by_x_;  // kill() leaves stale entries
  double min_len_ = 0.0;
  std::size_t actionable_ = 0;
};

struct ExtensionSite {
  int segment_id = -1;
  Point2 p{0.0, 0.0};
  enum class Direction { Left, Right } direction = Direction::Left;
};

/// Midpoint site on a frontier segment; the extension direction points away
/// from the swept side. Throws SegmentTooShort below eps_min.
ExtensionSite select_extension_site(const FrontierBoundary& frontier,
                                    int seg_id, double eps_min);

/// Horizontal segment from the site into unswept space, stopped at the
/// first curve hit or at the first frontier vertical crossing the path.
/// cap_fraction in (0,1) truncates to that fraction of the available room
/// (test hook for non-terminating-ray scenarios). Throws NoRoom when the
/// first obstruction is within eps_min.
HorizontalFreeSegment propose_extension_segment(const ClosedPolyline& curve,
                                                const FrontierBoundary& frontier,
                                                const ExtensionSite& site,
                                                double eps_min,
                                                double cap_fraction = 0.0);

struct SpliceResult {
  std::vector<int> created_ids;
  std::vector<Bridge> bridges;
  double consumed_overlap = 0.0;  // overlap with the site's segment
};

/// Splices a freshly built sweep into the frontier in place: every vertical
/// of the new sweep annihilates its overlap with opposite-side frontier
/// segments (those windows become interior), surviving parts join the
/// frontier. Throws SpliceMismatch when the site segment is not consumed.
SpliceResult splice(FrontierBoundary& frontier, const ExtensionSite& site,
                    const HorizontalSweep& new_sweep, int new_node,
                    double eps);

struct BoundaryDiagnostics {
  double max_gap = 0.0;
  int open_chains = 0;
  int loops = 0;
  int self_intersections = 0;
  int clearance_violations = 0;
  std::size_t element_count = 0;

  bool pass(double eps) const {
    return max_gap <= eps && open_chains == 0 && self_intersections == 0 &&
           clearance_violations == 0;
  }
};

/// Numeric Jordan-ness check of an ordered element chain: consecutive
/// endpoint gaps, closure, and proper crossings between non-adjacent
/// elements.
BoundaryDiagnostics validate_elements(const std::vector<BoundaryElement>& loop,
                                      double eps);

/// Traces the boundary loops of the accumulated swept region and validates
/// each loop; also checks that every live frontier segment keeps its
/// interior clear of the curve.
BoundaryDiagnostics validate_boundary(const ClosedPolyline& curve,
                                      const std::vector<Trapezoid>& trapezoids,
                                      const FrontierBoundary& frontier);

/// Traced cyclic boundary, one element list per loop.
std::vector<std::vector<BoundaryElement>> trace_boundary(
    const std::vector<Trapezoid>& trapezoids, double eps);

/// Debug/SVG dump: ordered JSON list of boundary elements with kind,
/// endpoints, and generating node where known.
std::string boundary_to_json(const ClosedPolyline& curve,
                             const std::vector<Trapezoid>& trapezoids,
                             const FrontierBoundary& frontier);

}  // namespace jsweep

#endif  // JSWEEP_FRONTIER_HPP
