#include "scpoly/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "scpoly/errors.hpp"
#include "scpoly/quadrature.hpp"

namespace scpoly {

namespace {

constexpr double kMargin = 0.05;

class Viewport {
public:
    Viewport(double min_x, double max_x, double min_y, double max_y, int width) {
        double w = max_x - min_x;
        double h = max_y - min_y;
        const double extent = std::max({w, h, 1e-300});
        w = std::max(w, 1e-3 * extent);
        h = std::max(h, 1e-3 * extent);
        origin_x_ = min_x - kMargin * w;
        top_y_ = max_y + kMargin * h;
        scale_ = width / (w * (1.0 + 2.0 * kMargin));
        width_ = width;
        height_ = static_cast<int>(std::ceil(h * (1.0 + 2.0 * kMargin) * scale_));
    }

    double x(Complex p) const { return (p.real() - origin_x_) * scale_; }
    double y(Complex p) const { return (top_y_ - p.imag()) * scale_; }
    int width() const { return width_; }
    int height() const { return height_; }

private:
    double origin_x_ = 0.0;
    double top_y_ = 0.0;
    double scale_ = 1.0;
    int width_ = 0;
    int height_ = 0;
};

std::string fmt(const char* pattern, double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string point(const Viewport& vp, Complex p) { return fmt("%.3f %.3f", vp.x(p), vp.y(p)); }

}  // namespace

std::vector<std::vector<Complex>> grid_images(const SCMap& map, int lines, int points, double tol) {
    if (lines < 1 || points < 2) fail(ErrorKind::InvalidArgument, "grid needs at least one line and two points");
    const auto& z = map.prevertices();
    const double lo = z[0];
    const double hi = z[z.finite_count() - 1];
    const double pad = std::max(1.0, hi - lo);
    const double x0 = lo - pad;
    const double x1 = hi + pad;
    const double top = pad;
    const double bottom = 1e-3 * pad;

    auto trace = [&](Complex from, Complex to) {
        std::vector<Complex> curve;
        curve.reserve(static_cast<std::size_t>(points));
        Complex prev = from;
        Complex value = evaluate(map, from, tol);
        curve.push_back(value);
        for (int k = 1; k < points; ++k) {
            const Complex next = from + (to - from) * (static_cast<double>(k) / (points - 1));
            value += map.scale() * integrate_sc(map, prev, next, tol);
            curve.push_back(value);
            prev = next;
        }
        return curve;
    };

    std::vector<std::vector<Complex>> out;
    for (int k = 1; k <= lines; ++k) {
        const double y = top * k / lines;
        out.push_back(trace(Complex(x0, y), Complex(x1, y)));
    }
    for (int k = 1; k <= lines; ++k) {
        const double x = x0 + (x1 - x0) * k / (lines + 1);
        out.push_back(trace(Complex(x, top), Complex(x, bottom)));
    }
    return out;
}

std::string render_svg(const LabelledPolygon& poly, const SvgStyle& style,
                       const std::vector<std::vector<Complex>>& curves, std::optional<PlanePoint> marker) {
    if (style.width < 1) fail(ErrorKind::InvalidArgument, "SVG width must be positive");
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    auto include = [&](Complex p) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, p.imag());
        max_y = std::max(max_y, p.imag());
    };
    for (const auto& w : poly.vertices()) include(w);
    for (const auto& c : curves) {
        for (const auto& p : c) include(p);
    }
    if (marker) include(*marker);
    const Viewport vp(min_x, max_x, min_y, max_y, style.width);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(vp.width()) + " " +
           std::to_string(vp.height()) + "\" width=\"" + std::to_string(vp.width()) + "\" height=\"" +
           std::to_string(vp.height()) + "\">\n";

    svg += "  <path d=\"M " + point(vp, poly[0]);
    for (std::size_t j = 1; j < poly.size(); ++j) svg += " L " + point(vp, poly[j]);
    svg += " Z\" fill=\"" + style.fill + "\" fill-opacity=\"" + num(style.fill_opacity) +
           "\" fill-rule=\"nonzero\" stroke=\"" + style.stroke + "\" stroke-width=\"" +
           num(style.stroke_width) + "\" stroke-linejoin=\"round\"/>\n";

    for (const auto& c : curves) {
        if (c.empty()) continue;
        svg += "  <polyline fill=\"none\" stroke=\"#7a7a7a\" stroke-width=\"" +
               num(0.5 * style.stroke_width) + "\" points=\"";
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k > 0) svg += ' ';
            svg += fmt("%.3f,%.3f", vp.x(c[k]), vp.y(c[k]));
        }
        svg += "\"/>\n";
    }

    if (style.label_vertices) {
        for (std::size_t j = 0; j < poly.size(); ++j) {
            svg += "  <text x=\"" + num(vp.x(poly[j])) + "\" y=\"" + num(vp.y(poly[j])) +
                   "\" font-size=\"12\" font-family=\"sans-serif\">w" + std::to_string(j + 1) + "</text>\n";
        }
    }
    if (marker) {
        svg += "  <circle cx=\"" + num(vp.x(*marker)) + "\" cy=\"" + num(vp.y(*marker)) +
               "\" r=\"" + num(2.5 * style.stroke_width) + "\" fill=\"#c0392b\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_map_svg(const SCMap& map, const SvgStyle& style, double tol, std::optional<PlanePoint> marker) {
    const LabelledPolygon poly(map_vertices(map, tol));
    std::vector<std::vector<Complex>> curves;
    if (style.grid_lines > 0) curves = grid_images(map, style.grid_lines, style.grid_points, tol);
    return render_svg(poly, style, curves, marker);
}

}  // namespace scpoly
