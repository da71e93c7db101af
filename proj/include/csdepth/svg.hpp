#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "config.hpp"
#include "scalar.hpp"

namespace csdepth::svg {

struct PlotOptions {
    bool draw_segments = false;
    std::vector<Point> marks;  // median witnesses and similar overlays
};

namespace detail {

inline double approx(const Rat& r) {
    return static_cast<double>(rat_num(r)) / static_cast<double>(rat_den(r));
}

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline const char* palette(std::size_t colour) {
    static constexpr std::array<const char*, 10> colours = {
        "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colours[colour % colours.size()];
}

}  // namespace detail

// Deterministic standalone drawing: coloured data points, optional
// colourful segments, crosses for the overlay marks. Doubles are used for
// layout only.
inline std::string render(const ColourConfiguration& cfg, const PlotOptions& options = {}) {
    using detail::approx;
    using detail::num;

    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
            return;
        }
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    };
    for (const Point& p : cfg.flat_points()) grow(approx(p.x), approx(p.y));
    for (const Point& p : options.marks) grow(approx(p.x), approx(p.y));
    if (first) grow(0, 0);

    const double span = std::max(max_x - min_x, max_y - min_y);
    const double pad = span > 0 ? span * 0.08 : 1.0;
    min_x -= pad;
    min_y -= pad;
    max_x += pad;
    max_y += pad;
    const double width = 640.0;
    const double scale = width / (max_x - min_x);
    const double height = (max_y - min_y) * scale;
    auto sx = [&](double x) { return (x - min_x) * scale; };
    auto sy = [&](double y) { return height - (y - min_y) * scale; };  // y up

    std::string out;
    out += "<!-- csdepth-svg v1 -->\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (options.draw_segments) {
        for (std::size_t c1 = 0; c1 < cfg.k(); ++c1)
            for (std::size_t c2 = c1 + 1; c2 < cfg.k(); ++c2)
                for (const Point& a : cfg.colour_class(c1))
                    for (const Point& b : cfg.colour_class(c2))
                        out += "<line x1=\"" + num(sx(approx(a.x))) + "\" y1=\"" + num(sy(approx(a.y))) +
                               "\" x2=\"" + num(sx(approx(b.x))) + "\" y2=\"" + num(sy(approx(b.y))) +
                               "\" stroke=\"#cccccc\" stroke-width=\"0.7\"/>\n";
    }

    for (std::size_t c = 0; c < cfg.k(); ++c)
        for (const Point& p : cfg.colour_class(c))
            out += "<circle cx=\"" + num(sx(approx(p.x))) + "\" cy=\"" + num(sy(approx(p.y))) +
                   "\" r=\"5\" fill=\"" + detail::palette(c) + "\" stroke=\"black\"/>\n";

    for (const Point& p : options.marks) {
        const double x = sx(approx(p.x));
        const double y = sy(approx(p.y));
        out += "<path d=\"M " + num(x - 7) + " " + num(y) + " L " + num(x + 7) + " " + num(y) +
               " M " + num(x) + " " + num(y - 7) + " L " + num(x) + " " + num(y + 7) +
               "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace csdepth::svg
