#pragma once

#include <optional>
#include <string>

#include "coniclines/marked_conic.hpp"

namespace coniclines {

// Axis-aligned rational rectangle in the affine chart z = 1.
struct Viewport {
    Rational xmin, ymin, xmax, ymax;
};

// One stroked segment per distinct line, clipped exactly to the viewport and
// converted to decimals (12 significant digits) only at output time. Stroke
// width grows with multiplicity; lines at infinity are listed in a legend.
// The default viewport is grown to contain a point of every line, so the
// path count always equals the number of renderable distinct lines.
std::string render_svg(const LineConfig& r, std::optional<Viewport> viewport = std::nullopt);

} // namespace coniclines
