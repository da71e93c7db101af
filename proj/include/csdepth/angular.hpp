#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "metrics.hpp"
#include "point.hpp"
#include "scalar.hpp"

namespace csdepth {

struct PointRef {
    std::int32_t colour = -1;  // 0-based class index, -1 when unknown
    std::int32_t index = -1;

    bool operator==(const PointRef&) const = default;
};

inline std::string describe(const PointRef& r) {
    if (r.colour < 0) return "<anonymous>";
    return "colour " + std::to_string(r.colour + 1) + " point " + std::to_string(r.index + 1);
}

class degenerate_input : public std::runtime_error {
public:
    explicit degenerate_input(const std::string& msg, std::vector<PointRef> refs = {})
        : std::runtime_error(msg), offenders(std::move(refs)) {}

    std::vector<PointRef> offenders;
};

// Thrown inside the symbolically offset depth computation when the chosen
// offset direction fails to separate a collinear pair; the caller retries
// with another direction.
class tied_offset : public degenerate_input {
public:
    using degenerate_input::degenerate_input;
};

// Exact stand-in for a polar angle around a fixed origin: the direction
// vector from the origin plus its quadrant, ordered counter-clockwise from
// the positive x-axis. `eps` is the coefficient of a shared symbolic
// infinitesimal offset (see AngularOrder); plain keys carry eps = 0.
struct AngularKey {
    Int dx;
    Int dy;
    std::int8_t eps = 0;
    std::int8_t quad = 0;
    PointRef ref;
};

// Comparison frame for angular keys. The frame owns the symbolic offset
// direction e: a key (v, eps) denotes the direction v + eps * t * e for an
// infinitesimally small t > 0. With e = (0,0) the frame reduces to the
// plain exact angular order.
class AngularOrder {
public:
    AngularOrder() : ex_(0), ey_(0), symbolic_(false) {}
    AngularOrder(Int ex, Int ey) : ex_(std::move(ex)), ey_(std::move(ey)) {
        symbolic_ = !(ex_ == 0 && ey_ == 0);
    }

    bool symbolic() const { return symbolic_; }
    const Int& offset_x() const { return ex_; }
    const Int& offset_y() const { return ey_; }

    AngularKey key(Int dx, Int dy, int eps = 0, PointRef ref = {}) const {
        if (dx == 0 && dy == 0)
            throw degenerate_input("query point coincides with " + describe(ref), {ref});
        AngularKey k{std::move(dx), std::move(dy), static_cast<std::int8_t>(eps), 0, ref};
        k.quad = static_cast<std::int8_t>(quadrant_of(k));
        return k;
    }

    // Direction from origin to p. Rational coordinates are cleared to an
    // integer vector by their (positive) denominators, which preserves the
    // direction exactly.
    AngularKey key(const Point& origin, const Point& p, int eps = 0, PointRef ref = {}) const {
        const Rat dx = p.x - origin.x;
        const Rat dy = p.y - origin.y;
        return key(rat_num(dx) * rat_den(dy), rat_num(dy) * rat_den(dx), eps, ref);
    }

    AngularKey antipode(const AngularKey& k) const {
        AngularKey a{-k.dx, -k.dy, static_cast<std::int8_t>(-k.eps), 0, k.ref};
        a.quad = static_cast<std::int8_t>((k.quad + 2) & 3);
        return a;
    }

    // Strict total order: quadrant, then the exact cross product, then the
    // first-order offset term. Returns 0 only for identical directions.
    int compare(const AngularKey& a, const AngularKey& b) const {
        if (a.quad != b.quad) return a.quad < b.quad ? -1 : 1;
        metrics::count_op();
        const Int primary = a.dx * b.dy - a.dy * b.dx;
        if (primary != 0) return primary > 0 ? -1 : 1;
        if (symbolic_) {
            const int s = offset_term_sign(a, b);
            if (s != 0) return s > 0 ? -1 : 1;
        }
        return 0;
    }

    bool less(const AngularKey& a, const AngularKey& b) const { return compare(a, b) < 0; }
    bool equal(const AngularKey& a, const AngularKey& b) const { return compare(a, b) == 0; }

    // Sign of the cross product of the two directions: +1 exactly when b
    // lies strictly inside the open half-turn counter-clockwise from a.
    // Works across quadrants; 0 only for collinear unresolved directions.
    int cross_sign(const AngularKey& a, const AngularKey& b) const {
        metrics::count_op();
        const Int primary = a.dx * b.dy - a.dy * b.dx;
        if (primary != 0) return primary > 0 ? 1 : -1;
        if (symbolic_) return offset_term_sign(a, b);
        return 0;
    }

    int cross_sign_checked(const AngularKey& a, const AngularKey& b) const {
        const int s = cross_sign(a, b);
        if (s == 0)
            throw degenerate_input("collinear directions through the query point: " + describe(a.ref) +
                                       " and " + describe(b.ref),
                                   {a.ref, b.ref});
        return s;
    }

private:
    // cross(a + ea*t*e, b + eb*t*e) = cross(a,b) + t * (eb*cross(a,e) - ea*cross(b,e)).
    int offset_term_sign(const AngularKey& a, const AngularKey& b) const {
        metrics::count_op();
        const Int term = Int(b.eps) * (a.dx * ey_ - a.dy * ex_) - Int(a.eps) * (b.dx * ey_ - b.dy * ex_);
        return sign_of(term);
    }

    int quadrant_of(const AngularKey& k) const {
        int sx = sign_of(k.dx);
        int sy = sign_of(k.dy);
        if (sx == 0 && k.eps != 0) sx = k.eps * sign_of(ex_);
        if (sy == 0 && k.eps != 0) sy = k.eps * sign_of(ey_);
        // quadrants from the positive x-axis: [0,pi/2), [pi/2,pi), [pi,3pi/2), [3pi/2,2pi)
        if (sx > 0 && sy >= 0) return 0;
        if (sx <= 0 && sy > 0) return 1;
        if (sx < 0 && sy <= 0) return 2;
        return 3;
    }

    Int ex_;
    Int ey_;
    bool symbolic_;
};

inline AngularKey angular_key(const Point& origin, const Point& p, PointRef ref = {}) {
    return AngularOrder{}.key(origin, p, 0, ref);
}

inline AngularKey antipode(const AngularKey& k) { return AngularOrder{}.antipode(k); }

inline bool operator<(const AngularKey& a, const AngularKey& b) {
    return AngularOrder{}.less(a, b);
}
inline bool operator==(const AngularKey& a, const AngularKey& b) {
    return AngularOrder{}.equal(a, b);
}

// True when q lies on the closed arc of less than a half turn between b and
// c. Antipodal or equal endpoints leave the minor arc undefined.
inline bool minor_arc_contains(const AngularKey& b, const AngularKey& c, const AngularKey& q) {
    const AngularOrder order;
    int s = order.cross_sign(b, c);
    if (s == 0)
        throw degenerate_input("minor arc endpoints are collinear directions", {b.ref, c.ref});
    const AngularKey& lo = s > 0 ? b : c;
    const AngularKey& hi = s > 0 ? c : b;
    return order.cross_sign(lo, q) >= 0 && order.cross_sign(q, hi) >= 0;
}

inline void sort_ccw(const AngularOrder& order, std::vector<AngularKey>& keys) {
    std::sort(keys.begin(), keys.end(),
              [&order](const AngularKey& a, const AngularKey& b) { return order.less(a, b); });
}

// Strictness guard: equal adjacent keys violate the general-position
// contract (two points on one ray from the origin). For symbolic frames an
// unresolved tie means the offset direction was unluckily parallel, which
// the caller can fix by retrying.
inline void require_strictly_increasing(const AngularOrder& order, const std::vector<AngularKey>& keys) {
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (order.compare(keys[i - 1], keys[i]) == 0) {
            const std::string msg = "equal polar angles about the query point: " +
                                    describe(keys[i - 1].ref) + " and " + describe(keys[i].ref);
            if (order.symbolic()) throw tied_offset(msg, {keys[i - 1].ref, keys[i].ref});
            throw degenerate_input(msg, {keys[i - 1].ref, keys[i].ref});
        }
    }
}

// Antipode array of a ccw-sorted key array, itself ccw-sorted, produced by
// rotation: antipodes of the upper half-circle come first. Linear time, no
// re-sort.
inline std::vector<AngularKey> rotate_antipodes(const AngularOrder& order,
                                                const std::vector<AngularKey>& sorted_keys) {
    std::vector<AngularKey> out;
    out.reserve(sorted_keys.size());
    std::size_t split = sorted_keys.size();
    for (std::size_t i = 0; i < sorted_keys.size(); ++i) {
        if (sorted_keys[i].quad >= 2) {
            split = i;
            break;
        }
    }
    for (std::size_t i = split; i < sorted_keys.size(); ++i) out.push_back(order.antipode(sorted_keys[i]));
    for (std::size_t i = 0; i < split; ++i) out.push_back(order.antipode(sorted_keys[i]));
    return out;
}

}  // namespace csdepth
