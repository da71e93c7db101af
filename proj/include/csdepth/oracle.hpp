#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "config.hpp"
#include "point.hpp"
#include "scalar.hpp"

// Brute-force references for every fast path. Everything here is written
// against the raw definitions with its own predicates, deliberately sharing
// no code with the optimized modules, so a bug cannot hide in both.
namespace csdepth::oracle {

struct OracleReport {
    std::int64_t value = 0;
    std::vector<Point> witnesses;
    std::uint64_t work = 0;
};

namespace detail {

inline int turn(const Point& a, const Point& b, const Point& c) {
    const Rat v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(v);
}

}  // namespace detail

// Closed-triangle containment from three turn signs.
inline bool closed_triangle_contains(const Point& a, const Point& b, const Point& c, const Point& x,
                                     std::uint64_t* work = nullptr) {
    if (work) *work += 3;
    const int s1 = detail::turn(a, b, x);
    const int s2 = detail::turn(b, c, x);
    const int s3 = detail::turn(c, a, x);
    return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

// Independent second containment route: x is in the closed triangle abc
// exactly when the direction opposite a (seen from x) lies on the closed
// minor arc between the directions of b and c. Only valid when x is not a
// vertex and no two of the directions are collinear.
inline std::optional<bool> arc_triangle_contains(const Point& a, const Point& b, const Point& c,
                                                 const Point& x, std::uint64_t* work = nullptr) {
    const Rat ax = a.x - x.x, ay = a.y - x.y;
    const Rat bx = b.x - x.x, by = b.y - x.y;
    const Rat cx = c.x - x.x, cy = c.y - x.y;
    if ((ax == 0 && ay == 0) || (bx == 0 && by == 0) || (cx == 0 && cy == 0)) return std::nullopt;
    if (work) *work += 3;
    auto crs = [](const Rat& ux, const Rat& uy, const Rat& vx, const Rat& vy) {
        return sign_of(ux * vy - uy * vx);
    };
    const int sbc = crs(bx, by, cx, cy);
    if (sbc == 0) return std::nullopt;
    //  antipode of a is (-ax, -ay)
    const Rat qx = -ax, qy = -ay;
    int lo_q, q_hi;
    if (sbc > 0) {
        lo_q = crs(bx, by, qx, qy);
        q_hi = crs(qx, qy, cx, cy);
    } else {
        lo_q = crs(cx, cy, qx, qy);
        q_hi = crs(qx, qy, bx, by);
    }
    if (lo_q == 0 || q_hi == 0) return std::nullopt;  // boundary: leave to the turn-based route
    return lo_q > 0 && q_hi > 0;
}

inline std::int64_t csd_bruteforce(const Point& x, const ColourConfiguration& cfg,
                                   OracleReport* report = nullptr) {
    std::uint64_t work = 0;
    std::int64_t total = 0;
    const std::size_t k = cfg.k();
    for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < k; ++c2)
            for (std::size_t c3 = c2 + 1; c3 < k; ++c3)
                for (const Point& a : cfg.colour_class(c1))
                    for (const Point& b : cfg.colour_class(c2))
                        for (const Point& c : cfg.colour_class(c3))
                            if (closed_triangle_contains(a, b, c, x, &work)) ++total;
    if (report) {
        report->value = total;
        report->work = work;
    }
    return total;
}

inline std::int64_t mono_depth_bruteforce(const Point& x, std::span<const Point> pts,
                                          OracleReport* report = nullptr) {
    std::uint64_t work = 0;
    std::int64_t total = 0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                if (closed_triangle_contains(pts[i], pts[j], pts[l], x, &work)) ++total;
    if (report) {
        report->value = total;
        report->work = work;
    }
    return total;
}

// Minimum over all lines through x and one data point of the points
// strictly on the smaller side.
inline std::int64_t hsd_bruteforce(const Point& x, std::span<const Point> pts) {
    if (pts.empty()) return 0;
    std::int64_t best = static_cast<std::int64_t>(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::int64_t left = 0, right = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            const int s = detail::turn(x, pts[i], pts[j]);
            if (s > 0) ++left;
            if (s < 0) ++right;
        }
        best = std::min(best, std::min(left, right));
    }
    return best;
}

// r first (strictly right of tail -> head), then l.
inline std::pair<std::int64_t, std::int64_t> side_counts_bruteforce(
    const Point& tail, const Point& head, std::int32_t tail_colour, std::int32_t head_colour,
    const ColourConfiguration& cfg) {
    std::int64_t r = 0, l = 0;
    for (std::size_t c = 0; c < cfg.k(); ++c) {
        if (static_cast<std::int32_t>(c) == tail_colour || static_cast<std::int32_t>(c) == head_colour)
            continue;
        for (const Point& q : cfg.colour_class(c)) {
            const int s = detail::turn(tail, head, q);
            if (s < 0) ++r;
            if (s > 0) ++l;
        }
    }
    return {r, l};
}

inline std::optional<Point> segment_interior_crossing(const Point& a, const Point& b, const Point& c,
                                                      const Point& d) {
    const Rat d1x = b.x - a.x, d1y = b.y - a.y;
    const Rat d2x = d.x - c.x, d2y = d.y - c.y;
    const Rat den = d1x * d2y - d1y * d2x;
    if (den == 0) return std::nullopt;
    const Rat t = ((c.x - a.x) * d2y - (c.y - a.y) * d2x) / den;
    const Rat u = ((c.x - a.x) * d1y - (c.y - a.y) * d1x) / den;
    if (!(t > 0 && t < 1 && u > 0 && u < 1)) return std::nullopt;
    return Point{a.x + t * d1x, a.y + t * d1y};
}

struct MedianBruteforce {
    std::int64_t depth = -1;
    std::vector<Point> witnesses;       // every maximizer among the candidates
    std::size_t non_data_witnesses = 0; // maximizers that are not data points
};

// Evaluates the depth at every data point and at every interior crossing of
// two colourful segments: the full candidate set for a maximizer.
inline MedianBruteforce median_bruteforce(const ColourConfiguration& cfg) {
    std::vector<std::pair<Point, Point>> segments;
    for (std::size_t c1 = 0; c1 < cfg.k(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < cfg.k(); ++c2)
            for (const Point& a : cfg.colour_class(c1))
                for (const Point& b : cfg.colour_class(c2)) segments.push_back({a, b});

    std::map<std::pair<Rat, Rat>, bool> candidates;  // point -> is data point
    for (const Point& p : cfg.flat_points()) candidates[{p.x, p.y}] = true;
    for (std::size_t i = 0; i < segments.size(); ++i)
        for (std::size_t j = i + 1; j < segments.size(); ++j)
            if (auto v = segment_interior_crossing(segments[i].first, segments[i].second,
                                                   segments[j].first, segments[j].second))
                candidates.insert({{v->x, v->y}, false});

    MedianBruteforce out;
    for (const auto& [coords, is_data] : candidates) {
        const Point p{coords.first, coords.second};
        const std::int64_t d = csd_bruteforce(p, cfg);
        if (d > out.depth) {
            out.depth = d;
            out.witnesses.clear();
            out.non_data_witnesses = 0;
        }
        if (d == out.depth) {
            out.witnesses.push_back(p);
            if (!is_data) ++out.non_data_witnesses;
        }
    }
    return out;
}

}  // namespace csdepth::oracle
