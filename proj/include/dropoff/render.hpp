#pragma once

#include <string>

#include "dropoff/geometry.hpp"
#include "dropoff/trace.hpp"

namespace dropoff {

struct RenderOptions {
  int width_px = 640;
  double margin = 0.05;         // fraction of the larger region extent
  double point_radius = 0.008;  // car marker radius, region units
};

// SVG of a trace over its region: region outline, initial positions in black,
// intermediate in red, final in blue, the final state's clipped Voronoi cells
// in blue, and per-cell inscribed circles (centered at the generators, radius
// equal to the safety margin) in black.
std::string render_trace_svg(const Trace& trace, const ConvexRegion& q,
                             const RenderOptions& opt = {});
void render_trace_svg_file(const Trace& trace, const ConvexRegion& q,
                           const std::string& path,
                           const RenderOptions& opt = {});

}  // namespace dropoff
