#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "sweep_core.hpp"
#include "topo_sweep.hpp"

namespace csdepth {

namespace detail {

// c1/b1 < c2/b2 for the constant vertical order of parallel lines (b > 0).
inline bool intercept_less(const Line& l1, const Line& l2) {
    metrics::count_op();
    return l1.c * l2.b < l2.c * l1.b;
}

struct SweepPrep {
    RadialOrder radial;
    SegmentSet segs;
    std::vector<Line> lines;
    std::vector<std::int64_t> data_depths;
    std::uint64_t crossing_pairs = 0;
};

inline SweepPrep prepare_sweep(const ColourConfiguration& cfg) {
    SweepPrep prep{sort_around_all(cfg), SegmentSet(cfg), {}, {}, 0};
    require_no_collinear_triples(cfg, prep.radial);
    prep.segs = side_counts(cfg, prep.radial);

    prep.lines.reserve(prep.segs.size());
    for (SegId s = 0; s < static_cast<SegId>(prep.segs.size()); ++s) {
        Line line = line_through(prep.segs.tail_point(s), prep.segs.head_point(s));
        if (line.vertical())
            throw degenerate_input(
                "vertical colourful segment between " + describe(cfg.ref(prep.segs[s].tail)) + " and " +
                    describe(cfg.ref(prep.segs[s].head)) + " (enable the shear fallback)",
                {cfg.ref(prep.segs[s].tail), cfg.ref(prep.segs[s].head)});
        prep.lines.push_back(std::move(line));
    }

    // pairs that actually cross: all pairs minus the parallel ones
    const std::size_t m = prep.lines.size();
    std::vector<std::size_t> by_slope(m);
    std::iota(by_slope.begin(), by_slope.end(), 0);
    std::sort(by_slope.begin(), by_slope.end(), [&](std::size_t a, std::size_t b) {
        return slope_less(prep.lines[a], prep.lines[b]);
    });
    prep.crossing_pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i + 1;
        while (j < m && parallel(prep.lines[by_slope[i]], prep.lines[by_slope[j]])) ++j;
        const std::uint64_t g = j - i;
        prep.crossing_pairs -= g * (g - 1) / 2;
        i = j;
    }

    prep.data_depths = depth_all_data_points(cfg, prep.radial);
    return prep;
}

// Priority sweep over exact crossing abscissae. The status holds the lines
// ordered bottom to top along a moving vertical line; only adjacent pairs
// carry a pending crossing event, so the queue stays linear in the number
// of lines. Stale events are dropped on pop and trimmed by compaction.
class XOrderSweep {
public:
    XOrderSweep(const ColourConfiguration& cfg, const SweepPrep& prep, DepthTracker& tracker)
        : cfg_(&cfg), prep_(&prep), tracker_(&tracker) {}

    void run() {
        const std::size_t m = prep_->lines.size();
        if (m < 2) return;
        data_index_.emplace(*cfg_);
        status_.resize(m);
        pos_.resize(m);
        std::iota(status_.begin(), status_.end(), static_cast<SegId>(0));
        // bottom first: slope descending, parallels by intercept ascending
        std::sort(status_.begin(), status_.end(), [&](SegId a, SegId b) {
            const Line& la = line(a);
            const Line& lb = line(b);
            if (!parallel(la, lb)) return slope_less(lb, la);
            return intercept_less(la, lb);
        });
        for (std::size_t i = 0; i < m; ++i) pos_[static_cast<std::size_t>(status_[i])] = i;

        for (std::size_t i = 0; i + 1 < m; ++i) push_adjacent(i);

        std::uint64_t steps = 0;
        while (!heap_.empty()) {
            const Event ev = pop_event();
            if (!valid(ev)) continue;
            step(ev);
            ++steps;
            maybe_compact();
        }
        if (steps != prep_->crossing_pairs)
            throw std::logic_error("x-order sweep lost vertices: " + std::to_string(steps) + " of " +
                                   std::to_string(prep_->crossing_pairs));
    }

private:
    // Crossing coordinates as one raw fraction pair (xn/den, yn/den) with
    // den > 0 and no normalization, so heap comparisons stay two integer
    // products; for lattice inputs they fit the integer's inline storage.
    struct Event {
        Int xn, yn, den;
        SegId lower;
        SegId upper;
    };

    const Line& line(SegId s) const { return prep_->lines[static_cast<std::size_t>(s)]; }

    static Event cross_event(const Line& ll, const Line& lh, SegId lo, SegId hi) {
        Int det = ll.a * lh.b - lh.a * ll.b;
        Int xn = ll.c * lh.b - lh.c * ll.b;
        Int yn = ll.a * lh.c - lh.a * ll.c;
        if (det < 0) {
            det = -det;
            xn = -xn;
            yn = -yn;
        }
        return Event{std::move(xn), std::move(yn), std::move(det), lo, hi};
    }

    static bool event_before(const Event& a, const Event& b) {
        metrics::count_op();
        const Int lhs = a.xn * b.den;
        const Int rhs = b.xn * a.den;
        if (lhs != rhs) return lhs < rhs;
        return a.yn * b.den < b.yn * a.den;
    }

    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const { return event_before(b, a); }
    };

    bool valid(const Event& ev) const {
        const std::size_t pl = pos_[static_cast<std::size_t>(ev.lower)];
        if (pl + 1 >= status_.size() || status_[pl + 1] != ev.upper) return false;
        if (!slope_less(line(ev.upper), line(ev.lower))) return false;  // already crossed
        if (position_ && event_before(ev, *position_)) return false;
        return true;
    }

    void push_adjacent(std::size_t i) {
        const SegId lo = status_[i];
        const SegId hi = status_[i + 1];
        const Line& ll = line(lo);
        const Line& lh = line(hi);
        if (parallel(ll, lh)) return;
        if (!slope_less(lh, ll)) return;  // crossing behind
        Event ev = cross_event(ll, lh, lo, hi);
        if (position_ && event_before(ev, *position_)) return;
        heap_.push_back(std::move(ev));
        std::push_heap(heap_.begin(), heap_.end(), EventAfter{});
        heap_gauge_.resize(heap_.capacity() * sizeof(Event));
    }

    Event pop_event() {
        std::pop_heap(heap_.begin(), heap_.end(), EventAfter{});
        Event ev = std::move(heap_.back());
        heap_.pop_back();
        return ev;
    }

    static bool on_line_fraction(const Line& l, const Event& ev) {
        metrics::count_op();
        return l.a * ev.xn + l.b * ev.yn == l.c * ev.den;
    }

    void step(const Event& ev) {
        const std::size_t i = pos_[static_cast<std::size_t>(ev.lower)];
        status_[i] = ev.upper;
        status_[i + 1] = ev.lower;
        pos_[static_cast<std::size_t>(ev.upper)] = i;
        pos_[static_cast<std::size_t>(ev.lower)] = i + 1;

        const VertexFrac at{ev.xn, ev.yn, ev.den};

        if (i > 0 && on_line_fraction(line(status_[i - 1]), ev) && !data_index_->contains(at))
            concurrent(ev, status_[i - 1]);
        if (i + 2 < status_.size() && on_line_fraction(line(status_[i + 2]), ev) && !data_index_->contains(at))
            concurrent(ev, status_[i + 2]);

        tracker_->process_pair_vertex(ev.lower, ev.upper, at);

        position_ = ev;

        if (i > 0) push_adjacent(i - 1);
        if (i + 2 < status_.size()) push_adjacent(i + 1);
    }

    [[noreturn]] void concurrent(const Event& ev, SegId third) const {
        throw degenerate_input(
            "three segment lines concurrent away from the data points, near segments " +
                describe(cfg_->ref(prep_->segs[ev.lower].tail)) + "-" +
                describe(cfg_->ref(prep_->segs[ev.lower].head)) + ", " +
                describe(cfg_->ref(prep_->segs[ev.upper].tail)) + "-" +
                describe(cfg_->ref(prep_->segs[ev.upper].head)) + ", " +
                describe(cfg_->ref(prep_->segs[third].tail)) + "-" +
                describe(cfg_->ref(prep_->segs[third].head)),
            {});
    }

    void maybe_compact() {
#ifdef CSDEPTH_HEAP_COMPACT_EAGERLY
        if (heap_.size() <= 8) return;
#else
        if (heap_.size() <= std::max<std::size_t>(64, 6 * status_.size())) return;
#endif
        std::vector<Event> keep;
        keep.reserve(status_.size());
        for (Event& ev : heap_)
            if (valid(ev)) keep.push_back(std::move(ev));
        heap_ = std::move(keep);
        std::make_heap(heap_.begin(), heap_.end(), EventAfter{});
        heap_gauge_.resize(heap_.capacity() * sizeof(Event));
    }

    const ColourConfiguration* cfg_;
    const SweepPrep* prep_;
    DepthTracker* tracker_;
    std::vector<SegId> status_;
    std::vector<std::size_t> pos_;
    std::vector<Event> heap_;
    std::optional<Event> position_;
    std::optional<detail::DataPointIndex> data_index_;
    metrics::Tracked heap_gauge_;
};

}  // namespace detail

// Maximum colourful simplicial depth over the plane with a witness: seeded
// by the depths of the data points, then swept across every interior
// crossing of two colourful segments (the only other candidates).
inline SweepResult sweep_median(const ColourConfiguration& cfg, const SweepOptions& options = {}) {
    if (cfg.nonempty_classes() < 3)
        throw std::invalid_argument("sweep_median: no colourful triangle exists (need 3 nonempty classes)");

    const detail::SweepPrep prep = detail::prepare_sweep(cfg);
    DepthTracker tracker(cfg, prep.segs, options);
    tracker.seed_data_points(prep.data_depths);

    if (options.engine == SweepEngine::x_order) {
        detail::XOrderSweep engine(cfg, prep, tracker);
        engine.run();
    } else {
        detail::TopologicalSweep engine(cfg, prep.lines, prep.crossing_pairs, tracker);
        engine.run();
    }
    return tracker.finish();
}

}  // namespace csdepth
