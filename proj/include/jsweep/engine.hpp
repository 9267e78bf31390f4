#ifndef JSWEEP_ENGINE_HPP
#define JSWEEP_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jsweep/curve.hpp"
#include "jsweep/frontier.hpp"
#include "jsweep/geometry.hpp"
#include "jsweep/segment.hpp"
#include "jsweep/sweep.hpp"

namespace jsweep {

enum class QueueOrder { FIFO, LIFO, LargestFirst, LeftmostFirst };

struct EnginePolicy {
  QueueOrder order = QueueOrder::LargestFirst;
  double eps_min = 0.0;  // <= 0: defaults to 1e-6 * bbox diagonal
  long max_steps = 1000000;
  int ray_guard_window = 64;
  bool validate_extensions = true;
  std::uint64_t seed = 0;
  // Test hook: truncate every proposed extension (and the initial sweep
  // base) to this fraction of the available room. Produces geometrically
  // shrinking sweeps that exercise the non-termination guard.
  double extension_cap_fraction = 0.0;
};

struct SweepNode {
  int id = -1;
  int parent = -1;  // -1 for the root sweep
  HorizontalFreeSegment t;
  double area = 0.0;
  double site_x = 0.0;    // x of the generating frontier segment
  double site_len = 0.0;  // its length
  std::size_t trap_begin = 0;
  std::size_t trap_end = 0;
};

struct RayDiagnostic {
  enum class Verdict { Terminating, NonTerminatingSuspected };
  Verdict verdict = Verdict::Terminating;
  std::vector<int> chain;  // suspect node chain, oldest first
  double x_estimate = 0.0;
  Interval limiting_span;
  long at_step = 0;
  bool remediated = false;
};

/// Uniform spatial grid over trapezoid indices for fast point-in-region
/// tests while the sweep is still growing (the slab index is static).
class TrapezoidGrid {
 public:
  void reset(const BoundingBox& box, int resolution = 256);
  void insert(const Trapezoid& tz, int index);
  int find(const std::vector<Trapezoid>& traps, const Point2& p,
           double tol) const;

 private:
  double x0_ = 0.0;
  double y0_ = 0.0;
  double inv_cell_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<int>> cells_;
};

struct SweepState {
  std::shared_ptr<const ClosedPolyline> curve;
  Point2 root{0.0, 0.0};
  std::string root_method;
  std::vector<SweepNode> nodes;
  FrontierBoundary frontier;
  std::vector<Trapezoid> trapezoids;
  std::vector<Bridge> bridges;
  std::vector<int> queue;  // frontier segment ids, possibly stale
  std::size_t queue_head = 0;
  // Priority mirror of the queue for LargestFirst/LeftmostFirst orders:
  // max-heap over (key, id) with lazy deletion of dead segments.
  std::vector<std::pair<double, int>> heap;
  double total_area = 0.0;
  std::vector<double> area_history;
  std::vector<RayDiagnostic> diagnostics;
  TrapezoidGrid grid;
  long steps = 0;
  bool step_limit_hit = false;
  double eps_min = 0.0;

  /// True when no frontier segment longer than eps_min remains.
  bool maximal() const { return frontier.actionable() == 0; }
};

enum class StepOutcome { Applied, Retired };

/// Interior seed point via the two-arc construction: the curve is split at
/// its leftmost and rightmost vertices, and a vertical line between them is
/// scanned for a free gap whose endpoints lie on different arcs.
Point2 find_root_point(const ClosedPolyline& curve);
Point2 find_root_point(const ClosedPolyline& curve, std::string& method);

SweepState make_initial_state(std::shared_ptr<const ClosedPolyline> curve,
                              const Point2& root, const EnginePolicy& policy);

/// Pops frontier segments until one is actionable, extends it, builds the
/// sweep, and splices it in. Throws QueueEmpty when nothing is left.
StepOutcome step(SweepState& state, const EnginePolicy& policy);

SweepState run_sweep(std::shared_ptr<const ClosedPolyline> curve,
                     const Point2& root, const EnginePolicy& policy);
SweepState run_sweep(std::shared_ptr<const ClosedPolyline> curve,
                     const EnginePolicy& policy);

/// Evaluates root-descending chains over the last window of nodes and
/// returns any suspected non-terminating accumulation.
std::vector<RayDiagnostic> ray_guard(const SweepState& state,
                                     const EnginePolicy& policy);

/// True when both maximal states cover the same region: areas agree to
/// 1e-9 relative and a seeded sample of points classifies identically.
/// Throws NotMaximal if either state still has actionable frontier.
bool sweeps_equivalent(const SweepState& a, const SweepState& b,
                       std::uint64_t seed = 0x5eedULL, int samples = 10000);

/// Image of the curve under inversion p -> (p - center) / |p - center|^2,
/// adaptively sampled per edge. The image swaps interior and exterior:
/// the original exterior maps into the bounded region around the origin.
ClosedPolyline invert_curve(const ClosedPolyline& curve, const Point2& center,
                            int samples_per_edge = 8);

struct ExteriorState {
  Point2 center{0.0, 0.0};
  std::shared_ptr<const ClosedPolyline> inverted;
  SweepState state;
};

/// Runs the sweep on the inverted curve, yielding a certificate for
/// exterior classification of the original curve.
ExteriorState exterior_sweep(const ClosedPolyline& curve, const Point2& center,
                             const EnginePolicy& policy);

std::string policy_name(QueueOrder order);
std::string report_json(const SweepState& state, const EnginePolicy& policy);

}  // namespace jsweep

#endif  // JSWEEP_ENGINE_HPP
