#pragma once

#include <string>

#include "bcross/layout.hpp"

namespace bcross {

enum class SvgMode { Rectangle, Disk };

// Deterministic SVG text for a layout: vertex dots, edge polylines, and one
// shaded convex region per bundled crossing. Disk mode wraps the baseline
// around a circle, rendering the edges as piecewise arcs.
// Throws error("missing geometry") when the drawing carries no polylines.
std::string render_svg(const LayoutResult& lr, SvgMode mode);

}  // namespace bcross
