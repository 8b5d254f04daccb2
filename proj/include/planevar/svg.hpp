#pragma once

// SVG drawing of a CTPP function: one <polygon> per triangle shaded by the
// value at its centroid, edges where neighbouring pieces disagree drawn in
// red, and optional polylines (point lists) on top. Output depends only on
// the inputs.

#include "planevar/ctpp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

namespace planevar {

struct SvgOptions {
    double width = 600;
    double margin = 20;
};

namespace detail {

inline std::string svg_num(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", d);
    return buf;
}

// Blue (low) through white to red (high), t in [0, 1].
inline std::string heat_colour(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        double s = t / 0.5;
        r = static_cast<int>(std::lround(59 + s * (255 - 59)));
        g = static_cast<int>(std::lround(76 + s * (255 - 76)));
        b = static_cast<int>(std::lround(192 + s * (255 - 192)));
    } else {
        double s = (t - 0.5) / 0.5;
        r = static_cast<int>(std::lround(255 + s * (180 - 255)));
        g = static_cast<int>(std::lround(255 + s * (4 - 255)));
        b = static_cast<int>(std::lround(255 + s * (38 - 255)));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

inline double shade_value(const Rational& v) { return v.get_d(); }
inline double shade_value(const Complex& v) { return std::abs(v); }

}  // namespace detail

template <FunctionValue V>
std::string render_svg(const CtppFunction<V>& g, const std::vector<PointList>& polylines = {},
                       const SvgOptions& opt = {}) {
    const auto& tri = g.triangulation();
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    auto widen = [&](const Point2& p) {
        double x = p.x.get_d(), y = p.y.get_d();
        if (first) {
            x0 = x1 = x;
            y0 = y1 = y;
            first = false;
        }
        x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    };
    for (const auto& v : tri.vertices()) widen(v);
    for (const auto& line : polylines)
        for (const auto& p : line) widen(p);
    double span = std::max({x1 - x0, y1 - y0, 1e-12});
    double scale = (opt.width - 2 * opt.margin) / span;
    double height = (y1 - y0) * scale + 2 * opt.margin;
    auto sx = [&](const Point2& p) { return detail::svg_num(opt.margin + (p.x.get_d() - x0) * scale); };
    auto sy = [&](const Point2& p) { return detail::svg_num(opt.margin + (y1 - p.y.get_d()) * scale); };

    std::vector<double> shade;
    for (std::size_t i = 0; i < tri.size(); ++i) {
        auto t = tri.triangle(i);
        Point2 c((t[0].x + t[1].x + t[2].x) / 3, (t[0].y + t[1].y + t[2].y) / 3);
        shade.push_back(detail::shade_value(g.coeffs()[i](c)));
    }
    double lo = 0, hi = 0;
    if (!shade.empty()) {
        lo = *std::min_element(shade.begin(), shade.end());
        hi = *std::max_element(shade.begin(), shade.end());
    }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(opt.width) + "\" height=\"" +
           detail::svg_num(height) + "\">\n";
    out += "<g class=\"triangles\" stroke=\"#333333\" stroke-width=\"0.5\">\n";
    for (std::size_t i = 0; i < tri.size(); ++i) {
        auto t = tri.triangle(i);
        double u = hi > lo ? (shade[i] - lo) / (hi - lo) : 0.5;
        out += "<polygon points=\"";
        for (int k = 0; k < 3; ++k) out += (k ? " " : "") + sx(t[k]) + "," + sy(t[k]);
        out += "\" fill=\"" + detail::heat_colour(u) + "\"/>\n";
    }
    out += "</g>\n";

    auto bad = validate_ctpp(g);
    if (!bad.empty()) {
        std::set<EdgeKey> seen;
        out += "<g class=\"violations\" stroke=\"#ff0000\" stroke-width=\"2\">\n";
        for (const auto& v : bad) {
            if (!seen.insert(v.edge).second) continue;
            const Point2& a = tri.vertices()[v.edge.first];
            const Point2& b = tri.vertices()[v.edge.second];
            out += "<line x1=\"" + sx(a) + "\" y1=\"" + sy(a) + "\" x2=\"" + sx(b) + "\" y2=\"" + sy(b) + "\"/>\n";
        }
        out += "</g>\n";
    }

    for (const auto& line : polylines) {
        out += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < line.size(); ++k) out += (k ? " " : "") + sx(line[k]) + "," + sy(line[k]);
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace planevar
