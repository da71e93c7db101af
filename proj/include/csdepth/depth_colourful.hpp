#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "angular.hpp"
#include "config.hpp"
#include "depth_mono.hpp"
#include "metrics.hpp"

namespace csdepth {

// Depth of a query point split into the quantities the decomposition is
// assembled from: colourful = total_mono - (star_sum - 2 * same_colour_sum).
struct DepthBreakdown {
    std::int64_t total_mono = 0;       // triangles of any colouring containing x
    std::int64_t same_colour_sum = 0;  // sum over colours of the one-colour depth
    std::int64_t star_sum = 0;         // sum of the per-colour star counts
    std::vector<std::int64_t> per_colour_star;
    std::int64_t colourful = 0;
};

// Per-colour ccw-sorted angle arrays plus their antipode arrays (also
// sorted, produced by rotation rather than re-sorting).
struct ColourAngles {
    std::vector<std::vector<AngularKey>> theta;
    std::vector<std::vector<AngularKey>> antipodes;
};

inline ColourAngles build_sorted_colour_angles(const Point& x, const ColourConfiguration& cfg,
                                               const AngularOrder& order = {}) {
    ColourAngles out;
    out.theta.resize(cfg.k());
    out.antipodes.resize(cfg.k());
    for (std::size_t c = 0; c < cfg.k(); ++c) {
        auto& keys = out.theta[c];
        keys.reserve(cfg.class_size(c));
        for (std::size_t j = 0; j < cfg.class_size(c); ++j)
            keys.push_back(order.key(x, cfg.colour_class(c)[j], order.symbolic() ? -1 : 0,
                                     {static_cast<std::int32_t>(c), static_cast<std::int32_t>(j)}));
        sort_ccw(order, keys);
        require_strictly_increasing(order, keys);
        out.antipodes[c] = rotate_antipodes(order, keys);
    }
    return out;
}

// k-way merge of the per-colour antipode arrays through a small heap.
inline std::vector<AngularKey> merge_antipodes(const AngularOrder& order,
                                               const std::vector<std::vector<AngularKey>>& arrays) {
    std::size_t total = 0;
    for (const auto& a : arrays) total += a.size();
    std::vector<AngularKey> merged;
    merged.reserve(total);

    using Cursor = std::pair<std::size_t, std::size_t>;  // (array, position)
    auto greater = [&](const Cursor& a, const Cursor& b) {
        return order.less(arrays[b.first][b.second], arrays[a.first][a.second]);
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
    for (std::size_t i = 0; i < arrays.size(); ++i)
        if (!arrays[i].empty()) heap.push({i, 0});
    while (!heap.empty()) {
        auto [arr, pos] = heap.top();
        heap.pop();
        merged.push_back(arrays[arr][pos]);
        if (pos + 1 < arrays[arr].size()) heap.push({arr, pos + 1});
    }
    require_strictly_increasing(order, merged);
    return merged;
}

// Merge of the antipode array with one colour's angles, recording for each
// colour element its index in the merged array. A tie between an antipode
// and a data angle is an exact antipodal pair in the input.
struct MergedWithPointers {
    std::vector<AngularKey> merged;
    std::vector<std::int64_t> position;  // position[j] = index of theta[j] in merged
};

inline MergedWithPointers merge_with_pointers(const AngularOrder& order,
                                              const std::vector<AngularKey>& antipodes,
                                              const std::vector<AngularKey>& theta) {
    MergedWithPointers out;
    out.merged.reserve(antipodes.size() + theta.size());
    out.position.resize(theta.size());
    std::size_t ia = 0, it = 0;
    while (ia < antipodes.size() || it < theta.size()) {
        bool take_theta;
        if (ia == antipodes.size()) {
            take_theta = true;
        } else if (it == theta.size()) {
            take_theta = false;
        } else {
            const int c = order.compare(antipodes[ia], theta[it]);
            if (c == 0) {
                const std::string msg = "antipodal pair about the query point: " +
                                        describe(antipodes[ia].ref) + " and " + describe(theta[it].ref);
                if (order.symbolic()) throw tied_offset(msg, {antipodes[ia].ref, theta[it].ref});
                throw degenerate_input(msg, {antipodes[ia].ref, theta[it].ref});
            }
            take_theta = c > 0;
        }
        if (take_theta) {
            out.position[it] = static_cast<std::int64_t>(out.merged.size());
            out.merged.push_back(theta[it++]);
        } else {
            out.merged.push_back(antipodes[ia++]);
        }
    }
    return out;
}

// gaps[h] = antipodes strictly between consecutive colour angles theta[h-1]
// and theta[h] going ccw; gaps[0] is the wrap-around gap. Sums to n.
inline std::vector<std::int64_t> gap_counts(const std::vector<std::int64_t>& position,
                                            std::int64_t n, std::int64_t n_i) {
    std::vector<std::int64_t> gaps(static_cast<std::size_t>(n_i), 0);
    if (n_i == 0) return gaps;
    if (n_i == 1) {
        gaps[0] = n;
        return gaps;
    }
    for (std::int64_t h = 1; h < n_i; ++h)
        gaps[static_cast<std::size_t>(h)] = position[static_cast<std::size_t>(h)] -
                                            position[static_cast<std::size_t>(h - 1)] - 1;
    gaps[0] = n + n_i - position[static_cast<std::size_t>(n_i - 1)] + position[0] - 1;
    return gaps;
}

inline std::vector<std::int64_t> prefix_sums(const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out(v.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        out[i] = acc;
    }
    return out;
}

// reach[j] = last index (cyclically from j) whose direction still lies in
// the open half-turn starting at theta[j]; reach[j] = j when no other
// colour angle does. One binary search seeds the scan, then the window end
// only advances.
inline std::vector<std::int32_t> reach_indices(const AngularOrder& order,
                                               const std::vector<AngularKey>& theta) {
    const std::size_t n_i = theta.size();
    std::vector<std::int32_t> reach(n_i, 0);
    if (n_i == 0) return reach;
    if (n_i == 1) {
        reach[0] = 0;
        return reach;
    }

    // within(t): theta[t mod n_i] lies strictly within the half-turn from theta[0];
    // true on a prefix of t = 1 .. n_i-1.
    auto within0 = [&](std::size_t t) { return order.cross_sign(theta[0], theta[t]) > 0; };
    std::size_t lo = 0, hi = n_i;  // invariant: within0 holds up to lo, fails from hi
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (within0(mid))
            lo = mid;
        else
            hi = mid;
    }
    reach[0] = static_cast<std::int32_t>(lo);

    std::size_t t = lo;  // absolute cursor, grows monotonically across j
    for (std::size_t j = 1; j < n_i; ++j) {
        if (t < j) t = j;
        while (t + 1 < j + n_i && order.cross_sign(theta[j], theta[(t + 1) % n_i]) > 0) ++t;
        reach[j] = static_cast<std::int32_t>(t % n_i);
    }
    return reach;
}

// Star count of one colour: ordered-lead pairs of colour-i angles spanning
// less than a half turn, each weighted by the antipodes on the spanned arc.
// Evaluated from the prefix tables in O(n_i); the wrapped case folds the
// whole-circle sums back in.
inline std::int64_t d_i_star(const std::vector<std::int64_t>& gaps,
                             const std::vector<std::int64_t>& S,
                             const std::vector<std::int64_t>& T,
                             const std::vector<std::int32_t>& reach) {
    const std::int64_t n_i = static_cast<std::int64_t>(gaps.size());
    if (n_i < 2) return 0;
    const std::size_t last = static_cast<std::size_t>(n_i - 1);
    std::int64_t star = 0;
    for (std::int64_t j = 0; j < n_i; ++j) {
        const std::int64_t L = reach[static_cast<std::size_t>(j)];
        const std::int64_t m = ((L - j) % n_i + n_i) % n_i;
        if (m == 0) continue;
        std::int64_t term = T[static_cast<std::size_t>(L)] - T[static_cast<std::size_t>(j)] -
                            m * S[static_cast<std::size_t>(j)];
        if (L < j + 1) term += T[last] + (L + 1) * S[last];
        star += term;
    }
    return star;
}

namespace detail {

inline std::uint64_t key_bytes(std::size_t count) {
    return static_cast<std::uint64_t>(count) * sizeof(AngularKey);
}

}  // namespace detail

// Colourful simplicial depth from per-colour pre-sorted angle arrays; the
// O(k n) path. The arrays must be strictly ccw-sorted per colour and
// jointly in general position about their origin.
inline DepthBreakdown csd_from_sorted_keys(const AngularOrder& order,
                                           const std::vector<std::vector<AngularKey>>& theta,
                                           const std::vector<std::vector<AngularKey>>* antipodes = nullptr) {
    const std::size_t k = theta.size();
    if (k < 3) throw std::invalid_argument("colourful depth needs at least 3 colour classes");

    std::size_t n = 0;
    for (const auto& t : theta) n += t.size();

    DepthBreakdown out;
    out.per_colour_star.assign(k, 0);

    std::vector<std::vector<AngularKey>> local_bars;
    const std::vector<std::vector<AngularKey>>* bars = antipodes;
    metrics::Tracked bars_gauge;
    if (bars == nullptr) {
        local_bars.reserve(k);
        for (const auto& t : theta) local_bars.push_back(rotate_antipodes(order, t));
        bars = &local_bars;
        bars_gauge.resize(detail::key_bytes(n));
    }

    for (std::size_t c = 0; c < k; ++c)
        out.same_colour_sum += simplicial_depth_sorted(order, theta[c]);

    const std::vector<AngularKey> all = merge_antipodes(order, *bars);
    const metrics::Tracked all_gauge(detail::key_bytes(all.size()));

    // general position about the origin: equal directions collide inside
    // the sorted arrays; an antipodal pair collides an antipode with a data
    // direction (the antipodes of the antipodes, re-sorted by rotation)
    if (!order.symbolic() && !all.empty()) {
        const std::vector<AngularKey> data_dirs = rotate_antipodes(order, all);
        std::size_t ia = 0, id = 0;
        while (ia < all.size() && id < data_dirs.size()) {
            const int c = order.compare(all[ia], data_dirs[id]);
            if (c == 0)
                throw degenerate_input("antipodal pair about the query point: " +
                                           describe(all[ia].ref) + " and " + describe(data_dirs[id].ref),
                                       {all[ia].ref, data_dirs[id].ref});
            c < 0 ? ++ia : ++id;
        }
    }

    out.total_mono = simplicial_depth_sorted(order, all);

    for (std::size_t c = 0; c < k; ++c) {
        const std::int64_t n_i = static_cast<std::int64_t>(theta[c].size());
        if (n_i < 2) continue;
        const metrics::Tracked iter_gauge(detail::key_bytes(n + theta[c].size()) +
                                          4 * theta[c].size() * sizeof(std::int64_t));
        const MergedWithPointers merged = merge_with_pointers(order, all, theta[c]);
        const auto gaps = gap_counts(merged.position, static_cast<std::int64_t>(n), n_i);
        const auto S = prefix_sums(gaps);
        const auto T = prefix_sums(S);
        const auto reach = reach_indices(order, theta[c]);
        const std::int64_t star = d_i_star(gaps, S, T, reach);
        out.per_colour_star[c] = star;
        out.star_sum += star;
    }

    out.colourful = out.total_mono - (out.star_sum - 2 * out.same_colour_sum);
    return out;
}

inline DepthBreakdown csd(const Point& x, const ColourConfiguration& cfg,
                          const AngularOrder& order = {}) {
    const ColourAngles angles = build_sorted_colour_angles(x, cfg, order);
    const metrics::Tracked gauge(2 * detail::key_bytes(cfg.n()));
    return csd_from_sorted_keys(order, angles.theta, &angles.antipodes);
}

// Pairs of points of two distinct colours both different from `colour`:
// triangles that would gain the data point itself as third vertex. Prefix
// sums keep this linear in k.
inline std::int64_t vertex_pair_count(const ColourConfiguration& cfg, std::int32_t colour) {
    std::int64_t suffix_total = 0;
    for (std::size_t c = 0; c < cfg.k(); ++c)
        if (static_cast<std::int32_t>(c) != colour) suffix_total += static_cast<std::int64_t>(cfg.class_size(c));
    std::int64_t running = 0;
    std::int64_t pairs = 0;
    for (std::size_t c = 0; c < cfg.k(); ++c) {
        if (static_cast<std::int32_t>(c) == colour) continue;
        const std::int64_t sz = static_cast<std::int64_t>(cfg.class_size(c));
        running += sz;
        pairs += sz * (suffix_total - running);
    }
    return pairs;
}

// Depth of a data point: depth relative to the other points plus the
// colourful triangles that have the point itself as a vertex.
inline std::int64_t csd_at_data_point(const ColourConfiguration& cfg, const PointRef& who) {
    if (who.colour < 0 || static_cast<std::size_t>(who.colour) >= cfg.k() || who.index < 0 ||
        static_cast<std::size_t>(who.index) >= cfg.class_size(static_cast<std::size_t>(who.colour)))
        throw std::invalid_argument("csd_at_data_point: not a data point of the configuration");

    const Point& q = cfg.point(who);
    const AngularOrder order;
    std::vector<std::vector<AngularKey>> theta(cfg.k());
    for (std::size_t c = 0; c < cfg.k(); ++c) {
        theta[c].reserve(cfg.class_size(c));
        for (std::size_t j = 0; j < cfg.class_size(c); ++j) {
            if (static_cast<std::int32_t>(c) == who.colour && static_cast<std::int32_t>(j) == who.index)
                continue;
            theta[c].push_back(order.key(q, cfg.colour_class(c)[j], 0,
                                         {static_cast<std::int32_t>(c), static_cast<std::int32_t>(j)}));
        }
        sort_ccw(order, theta[c]);
        require_strictly_increasing(order, theta[c]);
    }
    const DepthBreakdown rest = csd_from_sorted_keys(order, theta);
    return rest.colourful + vertex_pair_count(cfg, who.colour);
}

inline std::int64_t csd_at_data_point(const ColourConfiguration& cfg, const Point& q) {
    for (PtId id = 0; id < static_cast<PtId>(cfg.n()); ++id)
        if (cfg.point(id) == q) return csd_at_data_point(cfg, cfg.ref(id));
    throw std::invalid_argument("csd_at_data_point: query is not a data point");
}

}  // namespace csdepth
