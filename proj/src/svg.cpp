#include "jsweep/svg.hpp"

#include <fstream>
#include <sstream>

namespace jsweep {

namespace {

struct Mapper {
  double sx, sy, tx, ty;
  double X(double x) const { return sx * x + tx; }
  double Y(double y) const { return sy * y + ty; }  // flips y
};

Mapper make_mapper(const BoundingBox& box, int width, double& height) {
  const double w = std::max(box.max.x() - box.min.x(), 1e-12);
  const double h = std::max(box.max.y() - box.min.y(), 1e-12);
  const double margin = 0.05 * std::max(w, h);
  const double scale = width / (w + 2.0 * margin);
  height = scale * (h + 2.0 * margin);
  Mapper m;
  m.sx = scale;
  m.tx = scale * (margin - box.min.x());
  m.sy = -scale;
  m.ty = scale * (box.max.y() + margin);
  return m;
}

}  // namespace

std::string render_frame(const SweepState& state,
                         const std::optional<HorizontalFreeSegment>& current,
                         int width) {
  const ClosedPolyline& curve = *state.curve;
  double height = 0.0;
  const Mapper m = make_mapper(curve.bounds(), width, height);

  std::ostringstream svg;
  svg.precision(8);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";

  svg << "<g fill=\"#9ecae1\" fill-opacity=\"0.8\" stroke=\"none\">\n";
  for (const Trapezoid& tz : state.trapezoids) {
    svg << "<polygon points=\"" << m.X(tz.x0) << ',' << m.Y(tz.bot_y0) << ' '
        << m.X(tz.x1) << ',' << m.Y(tz.bot_y1) << ' ' << m.X(tz.x1) << ','
        << m.Y(tz.top_y1) << ' ' << m.X(tz.x0) << ',' << m.Y(tz.top_y0)
        << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Point2& v = curve.vertex(i);
    svg << (i == 0 ? 'M' : 'L') << m.X(v.x()) << ' ' << m.Y(v.y());
  }
  svg << "Z\"/>\n";

  svg << "<g stroke=\"red\" stroke-width=\"2\">\n";
  for (const FreeSeg& s : state.frontier.segs()) {
    if (!s.alive) continue;
    svg << "<line x1=\"" << m.X(s.x) << "\" y1=\"" << m.Y(s.span.lo)
        << "\" x2=\"" << m.X(s.x) << "\" y2=\"" << m.Y(s.span.hi) << "\"/>\n";
  }
  svg << "</g>\n";

  if (current) {
    svg << "<line stroke=\"blue\" stroke-width=\"2\" x1=\""
        << m.X(current->x_left) << "\" y1=\"" << m.Y(current->y) << "\" x2=\""
        << m.X(current->x_right) << "\" y2=\"" << m.Y(current->y) << "\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void write_frame(const std::string& path, const SweepState& state,
                 const std::optional<HorizontalFreeSegment>& current,
                 int width) {
  std::ofstream out(path);
  out << render_frame(state, current, width);
}

}  // namespace jsweep
