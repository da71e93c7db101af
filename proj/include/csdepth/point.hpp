#pragma once

#include <compare>

#include "metrics.hpp"
#include "scalar.hpp"

namespace csdepth {

struct Point {
    Rat x;
    Rat y;

    bool operator==(const Point& other) const = default;
};

// Lexicographic (x, then y); used for canonical witness selection and
// deterministic ordering, not for geometry.
inline bool lex_less(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// Sign of the turn a -> b -> c with the y axis pointing up:
// +1 when c lies strictly left of the directed line a -> b, -1 right,
// 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) {
    metrics::count_op();
    const Rat det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(det);
}

}  // namespace csdepth
