#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scpoly/geometry.hpp"
#include "scpoly/sc_types.hpp"
#include "scpoly/scmap.hpp"

namespace scpoly {

struct SvgStyle {
    int width = 640;  // pixels; the height follows the aspect ratio
    double stroke_width = 1.5;
    std::string stroke = "#1f3b73";
    std::string fill = "#9db4e0";
    double fill_opacity = 0.35;
    bool label_vertices = false;
    int grid_lines = 0;  // per direction, only used for maps
    int grid_points = 48;
};

/// Images under the map of `lines` horizontal and `lines` vertical segments
/// in the upper half-plane, sampled at `points` points each. Horizontal
/// lines come first. The box spans the prevertices with room on each side.
std::vector<std::vector<Complex>> grid_images(const SCMap& map, int lines, int points,
                                              double tol = kDefaultTol);

/// SVG document showing the polygon as one closed path, plus optional curves
/// and a marked point. Fixed-precision coordinates, so equal inputs give
/// identical bytes.
std::string render_svg(const LabelledPolygon& poly, const SvgStyle& style,
                       const std::vector<std::vector<Complex>>& curves = {},
                       std::optional<PlanePoint> marker = std::nullopt);

/// The map's polygon (through map_vertices) with its grid images.
std::string render_map_svg(const SCMap& map, const SvgStyle& style, double tol = kDefaultTol,
                           std::optional<PlanePoint> marker = std::nullopt);

}  // namespace scpoly
