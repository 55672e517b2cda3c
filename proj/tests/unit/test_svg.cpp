#include "doctest.h"

#include <regex>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "scpoly/svg.hpp"

using namespace scpoly;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("unit square") {
    const LabelledPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto svg = render_svg(sq, {});
    CHECK(count(svg, "<path") == 1);
    CHECK(count(svg, " L ") == 3);
    CHECK(count(svg, " Z\"") == 1);
    CHECK(svg.find("viewBox=\"0 0 640 640\"") != std::string::npos);
    // 5% margin on each side: the first vertex sits at (0.05, 0.95) of the frame.
    CHECK(svg.find("M 29.091 610.909") != std::string::npos);
    CHECK(svg == render_svg(sq, {}));
}

TEST_CASE("marker and labels") {
    const LabelledPolygon sq({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    SvgStyle style;
    style.label_vertices = true;
    const auto svg = render_svg(sq, style, {}, Complex(1.0, 0.5));
    CHECK(count(svg, "<circle") == 1);
    CHECK(count(svg, "<text") == 4);
    CHECK(svg.find("viewBox=\"0 0 640 320\"") != std::string::npos);
}

TEST_CASE("grid images stay inside a simple polygon") {
    SplitMix64 rng(71);
    for (int trial = 0; trial < 4; ++trial) {
        const auto [z, a] = moduli_unchart(gen::chart_point(rng, 5, 1.0));
        const SCMap map(z, a);
        const LabelledPolygon poly(map_vertices(map));
        REQUIRE(is_simple(poly));
        const auto curves = grid_images(map, 4, 12);
        CHECK(curves.size() == 8);
        for (const auto& c : curves) {
            CHECK(c.size() == 12);
            for (const auto& p : c) {
                if (distance_to_trace(poly, p) < 1e-9 * poly.scale()) continue;
                CHECK(oracle::ray_crossing_winding(poly.vertices(), p) >= 1);
            }
        }
        SvgStyle style;
        style.grid_lines = 3;
        const auto svg = render_map_svg(map, style);
        CHECK(count(svg, "<polyline") == 6);
    }
}
