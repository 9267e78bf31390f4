#ifndef JSWEEP_SVG_HPP
#define JSWEEP_SVG_HPP

#include <optional>
#include <string>

#include "jsweep/engine.hpp"

namespace jsweep {

/// One SVG frame of sweep progress: curve in black, swept trapezoids
/// filled, live frontier segments in red, the current sweep base (if any)
/// in blue.
std::string render_frame(const SweepState& state,
                         const std::optional<HorizontalFreeSegment>& current,
                         int width = 800);

void write_frame(const std::string& path, const SweepState& state,
                 const std::optional<HorizontalFreeSegment>& current,
                 int width = 800);

}  // namespace jsweep

#endif  // JSWEEP_SVG_HPP
