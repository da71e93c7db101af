#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "config.hpp"
#include "depth_colourful.hpp"
#include "metrics.hpp"

namespace csdepth {

enum class VertexClass { interior, phantom, data_point };

// Coordinate/side-count view of one colourful segment.
struct SegmentGeom {
    Point tail;
    Point head;
    std::int64_t r = 0;
    std::int64_t l = 0;
};

inline SegmentGeom segment_geom(const ColourConfiguration& cfg, const SegmentSet& segs, SegId id) {
    const ColourfulSegment& s = segs[id];
    return SegmentGeom{cfg.point(s.tail), cfg.point(s.head), s.r, s.l};
}

// Arrangement vertex as an unnormalized fraction (xn/den, yn/den), den > 0.
// The sweeps avoid rational normalization on their hot paths by doing all
// sign work on integers.
struct VertexFrac {
    Int xn, yn, den;
};

inline Point to_point(const VertexFrac& v) {
    return Point{make_rat(v.xn, v.den), make_rat(v.yn, v.den)};
}

inline VertexFrac to_fraction(const Point& p) {
    const Int xd = rat_den(p.x);
    const Int yd = rat_den(p.y);
    return VertexFrac{rat_num(p.x) * yd, rat_num(p.y) * xd, xd * yd};
}

namespace detail {

// A data point with cleared denominators: (x/d, y/d), d > 0.
struct ClearedPoint {
    Int x, y, d;
};

inline ClearedPoint clear_point(const Point& p) {
    const Int xd = rat_den(p.x);
    const Int yd = rat_den(p.y);
    const Int g = boost::multiprecision::gcd(xd, yd);
    Int d = xd / g * yd;
    return ClearedPoint{rat_num(p.x) * (d / xd), rat_num(p.y) * (d / yd), std::move(d)};
}

inline bool frac_equals(const VertexFrac& v, const ClearedPoint& p) {
    metrics::count_op();
    return v.xn * p.d == p.x * v.den && v.yn * p.d == p.y * v.den;
}

// lexicographic (x, y) over fractions
inline bool frac_lex_less(const VertexFrac& a, const VertexFrac& b) {
    metrics::count_op();
    const Int lx = a.xn * b.den;
    const Int rx = b.xn * a.den;
    if (lx != rx) return lx < rx;
    return a.yn * b.den < b.yn * a.den;
}

// Sorted index of the data points for "is this vertex a data point"
// queries; comparisons stay in integers.
class DataPointIndex {
public:
    explicit DataPointIndex(const ColourConfiguration& cfg) {
        pts_.reserve(cfg.n());
        for (const Point& p : cfg.flat_points()) pts_.push_back(clear_point(p));
        std::sort(pts_.begin(), pts_.end(), [](const ClearedPoint& a, const ClearedPoint& b) {
            const Int lx = a.x * b.d;
            const Int rx = b.x * a.d;
            if (lx != rx) return lx < rx;
            return a.y * b.d < b.y * a.d;
        });
    }

    bool contains(const VertexFrac& v) const {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), v, [](const ClearedPoint& p, const VertexFrac& q) {
            metrics::count_op();
            const Int lx = p.x * q.den;
            const Int rx = q.xn * p.d;
            if (lx != rx) return lx < rx;
            return p.y * q.den < q.yn * p.d;
        });
        return it != pts_.end() && frac_equals(v, *it);
    }

private:
    std::vector<ClearedPoint> pts_;
};

// Per-segment integer view used by the sweeps: cleared endpoints plus the
// side counts.
struct SegmentInts {
    ClearedPoint tail;
    ClearedPoint head;
    std::int64_t r = 0;
    std::int64_t l = 0;
};

inline std::vector<SegmentInts> clear_segments(const ColourConfiguration& cfg, const SegmentSet& segs) {
    std::vector<SegmentInts> out;
    out.reserve(segs.size());
    for (SegId s = 0; s < static_cast<SegId>(segs.size()); ++s)
        out.push_back(SegmentInts{clear_point(cfg.point(segs[s].tail)), clear_point(cfg.point(segs[s].head)),
                                  segs[s].r, segs[s].l});
    return out;
}

// sign of (v - C) x (D - C), all in integers
inline int turn_sign(const VertexFrac& v, const ClearedPoint& c, const ClearedPoint& d) {
    metrics::count_op();
    const Int f1 = v.xn * c.d - c.x * v.den;
    const Int f2 = d.y * c.d - c.y * d.d;
    const Int f3 = v.yn * c.d - c.y * v.den;
    const Int f4 = d.x * c.d - c.x * d.d;
    const Int det = f1 * f2 - f3 * f4;
    return det.sign();
}

inline bool strictly_inside(const SegmentInts& s, const VertexFrac& v) {
    metrics::count_op(2);
    const bool use_x = s.tail.x * s.head.d != s.head.x * s.tail.d;
    const Int& vn = use_x ? v.xn : v.yn;
    const Int a = (use_x ? s.tail.x : s.tail.y) * v.den;
    const Int b = (use_x ? s.head.x : s.head.y) * v.den;
    const Int m1 = vn * s.tail.d;
    const Int m2 = vn * s.head.d;
    return (m1 > a && m2 < b) || (m1 < a && m2 > b);
}

inline VertexClass classify_vertex_ints(const VertexFrac& v, const SegmentInts& s1, const SegmentInts& s2) {
    if (frac_equals(v, s1.tail) || frac_equals(v, s1.head) || frac_equals(v, s2.tail) ||
        frac_equals(v, s2.head))
        return VertexClass::data_point;
    if (strictly_inside(s1, v) && strictly_inside(s2, v)) return VertexClass::interior;
    return VertexClass::phantom;
}

// Integer form of the depth transport (see update_depth_across_vertex).
inline std::int64_t transport_depth(std::int64_t depth_p, const VertexFrac& p, const VertexFrac& v,
                                    const SegmentInts& s_j, const SegmentInts& s_k) {
    const int leave = turn_sign(v, s_j.tail, s_j.head);
    const int enter = turn_sign(p, s_k.tail, s_k.head);
    if (leave == 0)
        throw std::logic_error("depth transport: v lies on the segment left behind");
    if (enter == 0)
        throw std::logic_error("depth transport: p lies on the segment entered");
    // negative turn = strictly left of tail -> head; drop/gain the count on
    // the opposite side
    std::int64_t d = depth_p - (leave < 0 ? s_j.r : s_j.l);
    d += (enter < 0 ? s_k.r : s_k.l);
    return d;
}

}  // namespace detail

// v must lie on both supporting lines. Data-point vertices are shared
// endpoints; a vertex interior to both segments is a crossing the depth
// changes across; everything else is phantom.
inline VertexClass classify_vertex(const Point& v, const SegmentGeom& s1, const SegmentGeom& s2) {
    const VertexFrac f = to_fraction(v);
    const detail::SegmentInts i1{detail::clear_point(s1.tail), detail::clear_point(s1.head), s1.r, s1.l};
    const detail::SegmentInts i2{detail::clear_point(s2.tail), detail::clear_point(s2.head), s2.r, s2.l};
    return detail::classify_vertex_ints(f, i1, i2);
}

// Depth transport along a segment between consecutive interior vertices:
// leaving the segment crossed at p costs the side count opposite v, entering
// the segment crossed at v gains the side count opposite p.
inline std::int64_t update_depth_across_vertex(std::int64_t depth_p, const Point& p, const Point& v,
                                               const SegmentGeom& s_j, const SegmentGeom& s_k) {
    metrics::count_op(2);
    const Rat leave = (v.x - s_j.tail.x) * (s_j.head.y - s_j.tail.y) -
                      (v.y - s_j.tail.y) * (s_j.head.x - s_j.tail.x);
    const Rat enter = (p.x - s_k.tail.x) * (s_k.head.y - s_k.tail.y) -
                      (p.y - s_k.tail.y) * (s_k.head.x - s_k.tail.x);
    if (leave == 0)
        throw std::logic_error("update_depth_across_vertex: v lies on the segment left behind");
    if (enter == 0)
        throw std::logic_error("update_depth_across_vertex: p lies on the segment entered");
    std::int64_t d = depth_p - (leave < 0 ? s_j.r : s_j.l);
    d += (enter < 0 ? s_k.r : s_k.l);
    return d;
}

// Depth at an arbitrary arrangement point, including points lying on the
// interior of the segments listed in `through`. Evaluates the depth at the
// symbolically offset point v + t*e for an infinitesimal t > 0 (which is in
// general position) and adds back the triangles whose boundary edge the
// offset stepped off. Directions parallel to a data line through v cannot
// break its tie; such picks are detected exactly and retried.
inline std::int64_t depth_at_arrangement_point(const ColourConfiguration& cfg, const Point& v,
                                               std::span<const SegmentGeom> through) {
    auto line_cross_with = [&](const SegmentGeom& s, const Int& ex, const Int& ey) {
        const Rat d = (s.head.x - s.tail.x) * Rat(ey) - (s.head.y - s.tail.y) * Rat(ex);
        return sign_of(d);
    };

    const std::size_t attempts = cfg.n() + 3;
    for (std::size_t t = 0; t < attempts; ++t) {
        Int ex = t == 0 ? 1 : (t == 1 ? 0 : 1);
        Int ey = t == 0 ? 0 : (t == 1 ? 1 : Int(t - 1));
        bool usable = true;
        for (const SegmentGeom& s : through)
            if (line_cross_with(s, ex, ey) == 0) usable = false;
        if (!usable) continue;

        try {
            const AngularOrder order(ex, ey);
            std::int64_t depth = csd(v, cfg, order).colourful;
            for (const SegmentGeom& s : through) {
                // the offset stepped to one side of s; the triangles over s
                // with the third point on the other side still contain v
                const int side = line_cross_with(s, ex, ey);
                depth += side > 0 ? s.r : s.l;
            }
            return depth;
        } catch (const tied_offset&) {
            continue;  // offset parallel to a collinear pair through v
        }
    }
    throw degenerate_input("no offset direction separates the directions about the query point");
}

struct SweepStats {
    std::uint64_t elementary_steps = 0;
    std::uint64_t interior_vertices = 0;
    std::uint64_t phantom_vertices = 0;
    std::uint64_t endpoint_vertices = 0;
    std::uint64_t direct_depth_calls = 0;
    std::uint64_t subroutine_calls = 0;
};

enum class SweepEngine { x_order, topological };

struct SubroutineTrace {
    Point p;
    Point v;
    SegId along = -1;
    SegId left_behind = -1;
    SegId entered = -1;
    std::int64_t depth_p = 0;
    std::int64_t depth_v = 0;
};

struct SweepOptions {
    SweepEngine engine = SweepEngine::x_order;
    bool collect_all = false;
    // Test instrumentation: evaluate the depth at skipped (phantom and
    // endpoint) vertices directly and report them.
    bool audit_skipped = false;
    std::function<void(const Point&, std::int64_t)> on_interior_depth;
    std::function<void(const SubroutineTrace&)> on_subroutine;
};

struct SweepResult {
    std::int64_t depth = 0;
    Point witness;
    std::vector<Point> maximizers;
    SweepStats stats;
    std::vector<std::pair<Point, std::int64_t>> audited_skips;
};

// Per-colour sorted key arrays around each data point come straight from
// the radial orders, so every call runs on pre-sorted input.
inline std::vector<std::int64_t> depth_all_data_points(const ColourConfiguration& cfg,
                                                       const RadialOrder& radial) {
    const AngularOrder order;
    std::vector<std::int64_t> depths(cfg.n(), 0);
    for (PtId t = 0; t < static_cast<PtId>(cfg.n()); ++t) {
        const Point& anchor = cfg.point(t);
        std::vector<std::vector<AngularKey>> theta(cfg.k());
        for (PtId b : radial.around[static_cast<std::size_t>(t)])
            theta[static_cast<std::size_t>(cfg.colour_of(b))].push_back(
                order.key(anchor, cfg.point(b), 0, cfg.ref(b)));
        const DepthBreakdown rest = csd_from_sorted_keys(order, theta);
        depths[static_cast<std::size_t>(t)] = rest.colourful + vertex_pair_count(cfg, cfg.colour_of(t));
    }
    return depths;
}

// Shared depth bookkeeping for both sweep engines: the per-segment last
// processed vertex with its depth and crossing segment, and the running
// maximum. The reported witness is the lexicographically least maximizer,
// so the engines agree exactly.
class DepthTracker {
public:
    DepthTracker(const ColourConfiguration& cfg, const SegmentSet& segs, const SweepOptions& opts)
        : cfg_(&cfg), segs_(&segs), opts_(&opts), ints_(detail::clear_segments(cfg, segs)) {
        have_ver_.assign(segs.size(), false);
        ver_.resize(segs.size());
        ver_depth_.assign(segs.size(), 0);
        ver_cross_.assign(segs.size(), -1);
        gauge_.resize(segs.size() * (sizeof(VertexFrac) + sizeof(detail::SegmentInts) +
                                     sizeof(std::int64_t) + sizeof(SegId) + 1));
    }

    void seed_data_points(const std::vector<std::int64_t>& depths) {
        for (PtId i = 0; i < static_cast<PtId>(depths.size()); ++i)
            record(cfg_->point(i), depths[static_cast<std::size_t>(i)]);
    }

    void process_pair_vertex(SegId a, SegId b, const VertexFrac& v) {
        ++stats_.elementary_steps;
        const detail::SegmentInts& ga = ints_[static_cast<std::size_t>(a)];
        const detail::SegmentInts& gb = ints_[static_cast<std::size_t>(b)];
        switch (detail::classify_vertex_ints(v, ga, gb)) {
            case VertexClass::data_point:
                ++stats_.endpoint_vertices;
                if (opts_->audit_skipped) audit(v, a, b);
                return;
            case VertexClass::phantom:
                ++stats_.phantom_vertices;
                if (opts_->audit_skipped) audit(v, a, b);
                return;
            case VertexClass::interior:
                break;
        }
        ++stats_.interior_vertices;
        std::int64_t d;
        if (!have_ver_[static_cast<std::size_t>(a)] && !have_ver_[static_cast<std::size_t>(b)]) {
            const SegmentGeom through[2] = {segment_geom(*cfg_, *segs_, a), segment_geom(*cfg_, *segs_, b)};
            d = depth_at_arrangement_point(*cfg_, to_point(v), through);
            ++stats_.direct_depth_calls;
        } else if (have_ver_[static_cast<std::size_t>(a)]) {
            d = transport(a, v, b);
        } else {
            d = transport(b, v, a);
        }
        if (opts_->on_interior_depth) opts_->on_interior_depth(to_point(v), d);
        record_frac(v, d);
        set_ver(a, v, d, b);
        set_ver(b, v, d, a);
    }

    SweepResult finish() {
        SweepResult out;
        out.depth = best_;
        out.witness = witness_;
        out.stats = stats_;
        if (opts_->collect_all) {
            std::sort(maximizers_.begin(), maximizers_.end(), lex_less);
            out.maximizers = std::move(maximizers_);
        }
        out.audited_skips = std::move(audited_);
        return out;
    }

    const SweepStats& stats() const { return stats_; }

private:
    std::int64_t transport(SegId along, const VertexFrac& v, SegId entered) {
        const std::size_t ia = static_cast<std::size_t>(along);
        const std::int64_t d = detail::transport_depth(
            ver_depth_[ia], ver_[ia], v, ints_[static_cast<std::size_t>(ver_cross_[ia])],
            ints_[static_cast<std::size_t>(entered)]);
        ++stats_.subroutine_calls;
        if (opts_->on_subroutine)
            opts_->on_subroutine(SubroutineTrace{to_point(ver_[ia]), to_point(v), along, ver_cross_[ia],
                                                 entered, ver_depth_[ia], d});
        return d;
    }

    void set_ver(SegId s, const VertexFrac& v, std::int64_t d, SegId other) {
        const std::size_t i = static_cast<std::size_t>(s);
        have_ver_[i] = true;
        ver_[i] = v;
        ver_depth_[i] = d;
        ver_cross_[i] = other;
    }

    void record_frac(const VertexFrac& v, std::int64_t d) {
        if (d < best_) return;
        record(to_point(v), d);
    }

    void record(const Point& p, std::int64_t d) {
        if (d > best_) {
            best_ = d;
            witness_ = p;
            maximizers_.clear();
        }
        if (d == best_) {
            if (lex_less(p, witness_)) witness_ = p;
            if (opts_->collect_all) maximizers_.push_back(p);
        }
    }

    void audit(const VertexFrac& vf, SegId a, SegId b) {
        const Point v = to_point(vf);
        std::int64_t d;
        bool is_data = false;
        for (PtId i = 0; i < static_cast<PtId>(cfg_->n()) && !is_data; ++i)
            if (cfg_->point(i) == v) is_data = true;
        if (is_data) {
            d = csd_at_data_point(*cfg_, v);
        } else {
            std::vector<SegmentGeom> through;
            if (detail::strictly_inside(ints_[static_cast<std::size_t>(a)], vf))
                through.push_back(segment_geom(*cfg_, *segs_, a));
            if (detail::strictly_inside(ints_[static_cast<std::size_t>(b)], vf))
                through.push_back(segment_geom(*cfg_, *segs_, b));
            d = depth_at_arrangement_point(*cfg_, v, through);
        }
        audited_.push_back({v, d});
    }

    const ColourConfiguration* cfg_;
    const SegmentSet* segs_;
    const SweepOptions* opts_;
    std::vector<detail::SegmentInts> ints_;
    std::vector<char> have_ver_;
    std::vector<VertexFrac> ver_;
    std::vector<std::int64_t> ver_depth_;
    std::vector<SegId> ver_cross_;
    std::int64_t best_ = -1;
    Point witness_;
    std::vector<Point> maximizers_;
    std::vector<std::pair<Point, std::int64_t>> audited_;
    SweepStats stats_;
    metrics::Tracked gauge_;
};

// Any three collinear data points break the arrangement model (coincident
// support lines, data points interior to segments); they show up as equal
// or antipodal directions around some anchor.
inline void require_no_collinear_triples(const ColourConfiguration& cfg, const RadialOrder& radial) {
    const AngularOrder order;
    const std::size_t n = cfg.n();
    for (std::size_t a = 0; a < n; ++a) {
        const Point& anchor = cfg.point(static_cast<PtId>(a));
        std::vector<AngularKey> keys;
        keys.reserve(n - 1);
        for (PtId b : radial.around[a]) keys.push_back(order.key(anchor, cfg.point(b), 0, cfg.ref(b)));
        for (std::size_t i = 1; i < keys.size(); ++i)
            if (order.compare(keys[i - 1], keys[i]) == 0)
                throw degenerate_input("collinear data points: " + describe(cfg.ref(static_cast<PtId>(a))) +
                                           ", " + describe(keys[i - 1].ref) + ", " + describe(keys[i].ref),
                                       {cfg.ref(static_cast<PtId>(a)), keys[i - 1].ref, keys[i].ref});
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const AngularKey anti = order.antipode(keys[i]);
            auto less = [&](const AngularKey& lhs, const AngularKey& rhs) { return order.less(lhs, rhs); };
            const auto it = std::lower_bound(keys.begin(), keys.end(), anti, less);
            if (it != keys.end() && order.compare(*it, anti) == 0)
                throw degenerate_input("collinear data points: " + describe(cfg.ref(static_cast<PtId>(a))) +
                                           ", " + describe(keys[i].ref) + ", " + describe(it->ref),
                                       {cfg.ref(static_cast<PtId>(a)), keys[i].ref, it->ref});
        }
    }
}

}  // namespace csdepth
