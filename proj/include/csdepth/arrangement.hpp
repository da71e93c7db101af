#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "angular.hpp"
#include "config.hpp"
#include "depth_mono.hpp"
#include "metrics.hpp"

namespace csdepth {

// Directed segment between two differently coloured points, tail colour
// strictly below head colour. r counts the points of the remaining colours
// strictly to the right of tail -> head, l strictly to the left.
struct ColourfulSegment {
    PtId tail = -1;
    PtId head = -1;
    std::int64_t r = 0;
    std::int64_t l = 0;
};

using SegId = std::int32_t;

// All colourful segments with stable ids: grouped by (tail colour, head
// colour) pair, row-major by (tail index, head index) inside a group.
class SegmentSet {
public:
    explicit SegmentSet(const ColourConfiguration& cfg) : cfg_(&cfg) {
        const std::size_t k = cfg.k();
        pair_base_.assign(k * k, -1);
        gauge_.resize(0);
        std::int64_t base = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                pair_base_[a * k + b] = base;
                base += static_cast<std::int64_t>(cfg.class_size(a)) *
                        static_cast<std::int64_t>(cfg.class_size(b));
            }
        segments_.resize(static_cast<std::size_t>(base));
        gauge_.resize(segments_.size() * sizeof(ColourfulSegment));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                for (std::size_t i = 0; i < cfg.class_size(a); ++i)
                    for (std::size_t j = 0; j < cfg.class_size(b); ++j) {
                        const SegId id = this->id({static_cast<std::int32_t>(a), static_cast<std::int32_t>(i)},
                                                  {static_cast<std::int32_t>(b), static_cast<std::int32_t>(j)});
                        segments_[static_cast<std::size_t>(id)].tail =
                            cfg.flat_id({static_cast<std::int32_t>(a), static_cast<std::int32_t>(i)});
                        segments_[static_cast<std::size_t>(id)].head =
                            cfg.flat_id({static_cast<std::int32_t>(b), static_cast<std::int32_t>(j)});
                    }
    }

    SegId id(const PointRef& tail, const PointRef& head) const {
        const std::size_t k = cfg_->k();
        const std::int64_t base =
            pair_base_[static_cast<std::size_t>(tail.colour) * k + static_cast<std::size_t>(head.colour)];
        return static_cast<SegId>(base +
                                  static_cast<std::int64_t>(tail.index) *
                                      static_cast<std::int64_t>(cfg_->class_size(static_cast<std::size_t>(head.colour))) +
                                  head.index);
    }

    std::size_t size() const { return segments_.size(); }
    ColourfulSegment& operator[](SegId i) { return segments_[static_cast<std::size_t>(i)]; }
    const ColourfulSegment& operator[](SegId i) const { return segments_[static_cast<std::size_t>(i)]; }

    const Point& tail_point(SegId i) const { return cfg_->point(segments_[static_cast<std::size_t>(i)].tail); }
    const Point& head_point(SegId i) const { return cfg_->point(segments_[static_cast<std::size_t>(i)].head); }

    const std::vector<ColourfulSegment>& all() const { return segments_; }

private:
    const ColourConfiguration* cfg_;
    std::vector<std::int64_t> pair_base_;
    std::vector<ColourfulSegment> segments_;
    metrics::Tracked gauge_;
};

// For each point, the other points in exact ccw order around it. Ties
// (points collinear through the anchor on the same side) are kept adjacent
// and broken by flat id, so the order is deterministic.
struct RadialOrder {
    std::vector<std::vector<PtId>> around;
    metrics::Tracked gauge;
};

inline RadialOrder sort_around_all(const ColourConfiguration& cfg) {
    const std::size_t n = cfg.n();
    RadialOrder out;
    out.around.resize(n);
    out.gauge.resize(n * (n == 0 ? 0 : n - 1) * sizeof(PtId));
    const AngularOrder order;
    for (std::size_t a = 0; a < n; ++a) {
        const Point& anchor = cfg.point(static_cast<PtId>(a));
        std::vector<AngularKey> keys;
        keys.reserve(n - 1);
        std::vector<PtId>& ids = out.around[a];
        ids.reserve(n - 1);
        for (std::size_t b = 0; b < n; ++b)
            if (b != a) ids.push_back(static_cast<PtId>(b));
        for (PtId b : ids) keys.push_back(order.key(anchor, cfg.point(b), 0, cfg.ref(b)));
        std::vector<std::size_t> perm(ids.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t lhs, std::size_t rhs) {
            const int c = order.compare(keys[lhs], keys[rhs]);
            if (c != 0) return c < 0;
            return ids[lhs] < ids[rhs];
        });
        std::vector<PtId> sorted;
        sorted.reserve(ids.size());
        for (std::size_t p : perm) sorted.push_back(ids[p]);
        ids = std::move(sorted);
    }
    return out;
}

namespace detail {

// Maximal groups of equal keys in a ccw-sorted sequence. Ties happen only
// for points collinear through the anchor on the same side.
struct RunView {
    std::vector<std::size_t> start;  // run -> first member index, sentinel at the end
    std::vector<std::size_t> of;     // member -> run

    std::size_t count() const { return start.size() - 1; }
    std::size_t size(std::size_t r) const { return start[r + 1] - start[r]; }
};

inline RunView runs_of(const AngularOrder& order, const std::vector<AngularKey>& keys) {
    RunView rv;
    rv.of.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i == 0 || order.compare(keys[i - 1], keys[i]) != 0) rv.start.push_back(i);
        rv.of[i] = rv.start.size() - 1;
    }
    rv.start.push_back(keys.size());
    return rv;
}

// Size of the run of keys equal to the antipode of run r, zero when none.
inline std::int64_t antipodal_run_size(const AngularOrder& order, const std::vector<AngularKey>& keys,
                                       const RunView& runs, std::size_t r) {
    const AngularKey anti = order.antipode(keys[runs.start[r]]);
    auto less = [&](const AngularKey& lhs, const AngularKey& rhs) { return order.less(lhs, rhs); };
    const auto lo = std::lower_bound(keys.begin(), keys.end(), anti, less);
    if (lo == keys.end() || order.compare(*lo, anti) != 0) return 0;
    const std::size_t run = runs.of[static_cast<std::size_t>(lo - keys.begin())];
    return static_cast<std::int64_t>(runs.size(run));
}

// Strict-left counts over a possibly tied ccw-sorted key sequence: for the
// ray through member i, the members strictly inside the open half-turn.
// Members on the ray's line (equal or opposite key) count on neither side.
inline std::vector<std::int64_t> left_counts_with_runs(const AngularOrder& order,
                                                       const std::vector<AngularKey>& keys,
                                                       const RunView& runs) {
    const std::size_t n = keys.size();
    std::vector<std::int64_t> left(n, 0);
    if (n < 2) return left;
    const std::size_t m = runs.count();

    std::size_t j = 1;  // absolute run cursor, grows monotonically across r
    std::int64_t window = 0;
    for (std::size_t r = 0; r < m; ++r) {
        if (j < r + 1) {
            j = r + 1;
            window = 0;
        }
        while (j < r + m && order.cross_sign(keys[runs.start[r]], keys[runs.start[j % m]]) > 0) {
            window += static_cast<std::int64_t>(runs.size(j % m));
            ++j;
        }
        for (std::size_t i = runs.start[r]; i < runs.start[r + 1]; ++i) left[i] = window;
        if (j > r + 1) window -= static_cast<std::int64_t>(runs.size((r + 1) % m));
    }
    return left;
}

}  // namespace detail

// Side counts of every colourful segment in O(n) passes per anchor over the
// radial orders: one pass across the points of all other colours and one
// per head colour, subtracted per the half-space identities.
inline SegmentSet side_counts(const ColourConfiguration& cfg, const RadialOrder& radial) {
    SegmentSet segs(cfg);
    const AngularOrder order;
    const std::size_t n = cfg.n();
    const std::size_t k = cfg.k();

    for (std::size_t a = 0; a < n; ++a) {
        const PtId anchor = static_cast<PtId>(a);
        const std::int32_t col_a = cfg.colour_of(anchor);
        const Point& ap = cfg.point(anchor);

        // Sorted subsequences per colour and for "all but the anchor colour".
        std::vector<AngularKey> rest_keys;
        rest_keys.reserve(n - 1);
        std::vector<PtId> rest_ids;
        rest_ids.reserve(n - 1);
        std::vector<std::vector<AngularKey>> colour_keys(k);
        std::vector<std::vector<PtId>> colour_ids(k);
        for (PtId b : radial.around[a]) {
            const std::int32_t col_b = cfg.colour_of(b);
            if (col_b == col_a) continue;
            AngularKey key = order.key(ap, cfg.point(b), 0, cfg.ref(b));
            rest_ids.push_back(b);
            rest_keys.push_back(key);
            colour_ids[static_cast<std::size_t>(col_b)].push_back(b);
            colour_keys[static_cast<std::size_t>(col_b)].push_back(std::move(key));
        }

        const detail::RunView rest_runs = detail::runs_of(order, rest_keys);

        // Reject collinearity through the anchor between differently
        // coloured points: it puts a relevant point exactly on a segment
        // line. Equal keys share a run; opposite keys are found by matching
        // antipodes. Surviving runs and antipodal run pairs are one colour.
        for (std::size_t r = 0; r < rest_runs.count(); ++r) {
            const std::size_t first = rest_runs.start[r];
            for (std::size_t i = first + 1; i < rest_runs.start[r + 1]; ++i)
                if (cfg.colour_of(rest_ids[first]) != cfg.colour_of(rest_ids[i]))
                    throw degenerate_input("point on a colourful segment line: " + describe(cfg.ref(anchor)) +
                                               ", " + describe(cfg.ref(rest_ids[first])) + ", " +
                                               describe(cfg.ref(rest_ids[i])),
                                           {cfg.ref(anchor), cfg.ref(rest_ids[first]), cfg.ref(rest_ids[i])});
            const AngularKey anti = order.antipode(rest_keys[first]);
            auto less = [&](const AngularKey& lhs, const AngularKey& rhs) { return order.less(lhs, rhs); };
            auto it = std::lower_bound(rest_keys.begin(), rest_keys.end(), anti, less);
            if (it != rest_keys.end() && order.compare(*it, anti) == 0) {
                const std::size_t j = static_cast<std::size_t>(it - rest_keys.begin());
                if (cfg.colour_of(rest_ids[first]) != cfg.colour_of(rest_ids[j]))
                    throw degenerate_input("point on a colourful segment line: " + describe(cfg.ref(anchor)) +
                                               ", " + describe(cfg.ref(rest_ids[first])) + ", " +
                                               describe(cfg.ref(rest_ids[j])),
                                           {cfg.ref(anchor), cfg.ref(rest_ids[first]), cfg.ref(rest_ids[j])});
            }
        }

        const std::vector<std::int64_t> rest_left = detail::left_counts_with_runs(order, rest_keys, rest_runs);
        std::vector<std::size_t> pos_in_rest(n, 0);
        for (std::size_t i = 0; i < rest_ids.size(); ++i)
            pos_in_rest[static_cast<std::size_t>(rest_ids[i])] = i;
        std::vector<std::int64_t> online_rest(rest_keys.size(), 0);
        for (std::size_t r = 0; r < rest_runs.count(); ++r) {
            const std::int64_t on_line = static_cast<std::int64_t>(rest_runs.size(r)) - 1 +
                                         detail::antipodal_run_size(order, rest_keys, rest_runs, r);
            for (std::size_t i = rest_runs.start[r]; i < rest_runs.start[r + 1]; ++i) online_rest[i] = on_line;
        }

        const std::int64_t rest_total = static_cast<std::int64_t>(rest_keys.size());
        for (std::size_t hc = static_cast<std::size_t>(col_a) + 1; hc < k; ++hc) {
            const auto& hk = colour_keys[hc];
            if (hk.empty()) continue;
            const detail::RunView head_runs = detail::runs_of(order, hk);
            const std::vector<std::int64_t> head_left = detail::left_counts_with_runs(order, hk, head_runs);
            std::vector<std::int64_t> online_head(hk.size(), 0);
            for (std::size_t r = 0; r < head_runs.count(); ++r) {
                const std::int64_t on_line = static_cast<std::int64_t>(head_runs.size(r)) - 1 +
                                             detail::antipodal_run_size(order, hk, head_runs, r);
                for (std::size_t i = head_runs.start[r]; i < head_runs.start[r + 1]; ++i) online_head[i] = on_line;
            }
            const std::int64_t head_total = static_cast<std::int64_t>(hk.size());
            for (std::size_t i = 0; i < hk.size(); ++i) {
                const PtId head = colour_ids[hc][i];
                const std::size_t rpos = pos_in_rest[static_cast<std::size_t>(head)];
                const std::int64_t lbar = rest_left[rpos];
                const std::int64_t rbar = rest_total - 1 - lbar - online_rest[rpos];
                const std::int64_t l_head = head_left[i];
                const std::int64_t r_head = head_total - 1 - l_head - online_head[i];
                const SegId sid = segs.id(cfg.ref(anchor), cfg.ref(head));
                segs[sid].r = rbar - r_head;
                segs[sid].l = lbar - l_head;
            }
        }
    }
    return segs;
}

// Supporting line of a segment as integer coefficients a*x + b*y = c,
// reduced and with a canonical sign (b > 0, or b == 0 and a > 0).
struct Line {
    Int a, b, c;

    bool vertical() const { return b == 0; }
};

inline Line line_through(const Point& p, const Point& q) {
    const Rat ra = q.y - p.y;
    const Rat rb = p.x - q.x;
    // clear denominators
    Int den_lcm = rat_den(ra) * rat_den(rb);
    Int a = rat_num(ra) * (den_lcm / rat_den(ra));
    Int b = rat_num(rb) * (den_lcm / rat_den(rb));
    Rat rc = ra * p.x + rb * p.y;
    rc *= Rat(den_lcm);
    Int c_num = rat_num(rc);
    Int c_den = rat_den(rc);
    a *= c_den;
    b *= c_den;
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a), abs(b)), abs(c_num));
    if (g > 1) {
        a /= g;
        b /= g;
        c_num /= g;
    }
    if (b < 0 || (b == 0 && a < 0)) {
        a = -a;
        b = -b;
        c_num = -c_num;
    }
    return Line{std::move(a), std::move(b), std::move(c_num)};
}

// slope(l1) < slope(l2), exact; both lines must be non-vertical.
inline bool slope_less(const Line& l1, const Line& l2) {
    metrics::count_op();
    return l2.a * l1.b < l1.a * l2.b;  // -a1/b1 < -a2/b2 with b > 0
}

inline bool parallel(const Line& l1, const Line& l2) {
    metrics::count_op();
    return l1.a * l2.b == l2.a * l1.b;
}

inline std::optional<Point> intersect(const Line& l1, const Line& l2) {
    metrics::count_op();
    const Int det = l1.a * l2.b - l2.a * l1.b;
    if (det == 0) return std::nullopt;
    return Point{make_rat(l1.c * l2.b - l2.c * l1.b, det), make_rat(l1.a * l2.c - l2.a * l1.c, det)};
}

inline bool on_line(const Line& l, const Point& p) {
    metrics::count_op();
    return Rat(l.a) * p.x + Rat(l.b) * p.y == Rat(l.c);
}

}  // namespace csdepth
