#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "angular.hpp"
#include "metrics.hpp"
#include "point.hpp"

namespace csdepth {

// Angular keys of a point set around an origin, strictly ccw-sorted.
struct SortedAngles {
    Point origin;
    std::vector<AngularKey> keys;
};

inline SortedAngles sort_angles(const Point& origin, std::span<const Point> pts,
                                const AngularOrder& order = {}) {
    SortedAngles out{origin, {}};
    out.keys.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        out.keys.push_back(order.key(origin, pts[i], 0, {-1, static_cast<std::int32_t>(i)}));
    sort_ccw(order, out.keys);
    require_strictly_increasing(order, out.keys);
    return out;
}

inline std::int64_t choose2(std::int64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }
inline std::int64_t choose3(std::int64_t m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }

// u[i] = number of keys strictly inside the open half-turn ccw from keys[i].
// One circular two-pointer pass; the window end advances monotonically.
inline std::vector<std::int64_t> halfcircle_counts(const AngularOrder& order,
                                                   std::span<const AngularKey> keys) {
    const std::size_t n = keys.size();
    std::vector<std::int64_t> u(n, 0);
    if (n < 2) return u;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < i + 1) j = i + 1;
        while (j < i + n && order.cross_sign(keys[i], keys[j % n]) > 0) ++j;
        u[i] = static_cast<std::int64_t>(j - i - 1);
    }
    return u;
}

// Counts strictly left of each directed ray origin -> point. Right counts
// follow as n - left - 1.
struct HalfspaceCounts {
    std::vector<std::int64_t> left;
    std::int64_t total = 0;

    std::int64_t right(std::size_t i) const {
        return total - left[i] - 1;
    }
};

inline HalfspaceCounts halfspace_counts(const AngularOrder& order, std::span<const AngularKey> keys) {
    HalfspaceCounts out;
    out.left = halfcircle_counts(order, keys);
    out.total = static_cast<std::int64_t>(keys.size());
    return out;
}

inline HalfspaceCounts halfspace_counts(const SortedAngles& angles) {
    return halfspace_counts(AngularOrder{}, angles.keys);
}

// Number of closed triangles over the keyed points containing the origin:
// C(n,3) minus the triples confined to an open half-circle.
inline std::int64_t simplicial_depth_sorted(const AngularOrder& order,
                                            std::span<const AngularKey> keys) {
    const std::int64_t n = static_cast<std::int64_t>(keys.size());
    if (n < 3) return 0;
    std::int64_t missing = 0;
    for (std::int64_t c : halfcircle_counts(order, keys)) missing += choose2(c);
    return choose3(n) - missing;
}

inline std::int64_t simplicial_depth_sorted(const SortedAngles& angles) {
    return simplicial_depth_sorted(AngularOrder{}, angles.keys);
}

inline std::int64_t simplicial_depth(const Point& x, std::span<const Point> pts) {
    return simplicial_depth_sorted(sort_angles(x, pts));
}

// Half-space depth: the minimum over directed lines through x (one per data
// point) of the points strictly on one side. Zero exactly when x is outside
// or on the hull boundary.
inline std::int64_t hsd(const Point& x, std::span<const Point> pts) {
    if (pts.empty()) return 0;
    const SortedAngles angles = sort_angles(x, pts);
    const auto counts = halfspace_counts(angles);
    std::int64_t best = counts.total;  // upper bound, replaced on first ray
    for (std::size_t i = 0; i < angles.keys.size(); ++i) {
        best = std::min(best, std::min(counts.left[i], counts.right(i)));
    }
    return best;
}

}  // namespace csdepth
