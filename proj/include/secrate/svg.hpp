#ifndef SECRATE_SVG_HPP
#define SECRATE_SVG_HPP

/*
 * Deterministic SVG rendering of planar rate regions.
 *
 * Each series is a labeled Region2D; the renderer overlays them as
 * translucent polygons in a fixed palette, draws axes with nice tick
 * steps, and emits a legend.  Output is a self-contained SVG document
 * with no timestamps or external references, so identical inputs yield
 * byte-identical files.
 */

#include <string>
#include <vector>

#include "secrate/polytope.hpp"

namespace secrate {

struct RegionSeries {
    std::string label;
    Region2D region;
};

// Renders the series in the order given (draw earlier entries first so
// later, typically smaller, regions sit on top).  Degenerate regions are
// handled: one vertex becomes a dot, two a segment, and an empty region
// is skipped with a note in the legend.
std::string render_regions_svg(const std::vector<RegionSeries>& series,
                               const std::string& title = "");

}  // namespace secrate

#endif  // SECRATE_SVG_HPP
