#include "dropoff/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dropoff/pricing.hpp"

namespace dropoff {

namespace {

constexpr const char* kBlack = "#000000";
constexpr const char* kRed = "#d62728";
constexpr const char* kBlue = "#1f4fd0";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

}  // namespace

std::string render_trace_svg(const Trace& trace, const ConvexRegion& q,
                             const RenderOptions& opt) {
  if (trace.steps.empty() || trace.steps.front().positions.empty()) {
    throw std::runtime_error("render: empty trace");
  }
  const Point lo = q.bbox_min();
  const Point hi = q.bbox_max();
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
  const double m = opt.margin * extent;
  const double vw = (hi.x - lo.x) + 2.0 * m;
  const double vh = (hi.y - lo.y) + 2.0 * m;
  const int height_px =
      static_cast<int>(std::lround(opt.width_px * vh / vw));
  // SVG y grows downward; reflect about the region's vertical midline.
  auto fy = [&](double y) { return lo.y + hi.y - y; };
  const double stroke = 0.004 * extent;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width_px
      << "\" height=\"" << height_px << "\" viewBox=\"" << fmt(lo.x - m) << ' '
      << fmt(lo.y - m) << ' ' << fmt(vw) << ' ' << fmt(vh) << "\">\n";

  auto polygon = [&](const ConvexRegion& poly, const char* cls,
                     const char* color, double width) {
    out << "<polygon class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < poly.vertices().size(); ++i) {
      const Point& p = poly.vertices()[i];
      if (i > 0) {
        out << ' ';
      }
      out << fmt(p.x) << ',' << fmt(fy(p.y));
    }
    out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << fmt(width) << "\"/>\n";
  };

  polygon(q, "region", kBlack, stroke * 1.5);

  const TraceStep& last = trace.steps.back();
  const FleetState final_state{last.positions};
  const std::size_t k = last.positions.size();
  for (std::size_t u = 0; u < k; ++u) {
    polygon(voronoi_cell(final_state, u, q), "cell", kBlue, stroke);
  }
  for (std::size_t u = 0; u < k; ++u) {
    const double r = safety_margin(final_state, u, q);
    if (std::isfinite(r) && r > 0.0) {
      out << "<circle class=\"incircle\" cx=\"" << fmt(last.positions[u].x)
          << "\" cy=\"" << fmt(fy(last.positions[u].y)) << "\" r=\"" << fmt(r)
          << "\" fill=\"none\" stroke=\"" << kBlack << "\" stroke-width=\""
          << fmt(stroke) << "\"/>\n";
    }
  }

  auto dots = [&](const TraceStep& s, const char* cls, const char* color,
                  double radius) {
    for (const Point& p : s.positions) {
      out << "<circle class=\"" << cls << "\" cx=\"" << fmt(p.x) << "\" cy=\""
          << fmt(fy(p.y)) << "\" r=\"" << fmt(radius) << "\" fill=\"" << color
          << "\"/>\n";
    }
  };

  const double pr = opt.point_radius * extent;
  for (std::size_t i = 1; i + 1 < trace.steps.size(); ++i) {
    dots(trace.steps[i], "car-mid", kRed, pr * 0.6);
  }
  dots(trace.steps.front(), "car-initial", kBlack, pr);
  if (trace.steps.size() > 1) {
    dots(last, "car-final", kBlue, pr);
  }
  out << "</svg>\n";
  return out.str();
}

void render_trace_svg_file(const Trace& trace, const ConvexRegion& q,
                           const std::string& path, const RenderOptions& opt) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("render: cannot open '" + path + "' for writing");
  }
  out << render_trace_svg(trace, q, opt);
  if (!out) {
    throw std::runtime_error("render: write to '" + path + "' failed");
  }
}

}  // namespace dropoff
