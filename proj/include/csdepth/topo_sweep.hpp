#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "sweep_core.hpp"

namespace csdepth::detail {

// Topological sweep of the line arrangement: a flexible cut holding one
// edge per line advances one vertex at a time by popping ready positions
// off a stack. A position is ready when the two cut-adjacent lines cross at
// the right endpoint of both current edges. Right endpoints come from
// per-line crossing schedules (each line's partners sorted by crossing
// abscissa), which stay exact under the pencils of segments that share a
// data point: all crossings of a pencil sit at one abscissa and resolve
// into ordinary adjacent transpositions.
class TopologicalSweep {
public:
    TopologicalSweep(const ColourConfiguration& cfg, const std::vector<Line>& lines,
                     std::uint64_t expected_steps, DepthTracker& tracker)
        : cfg_(&cfg), lines_(&lines), expected_(expected_steps), tracker_(&tracker) {}

    void run() {
        const std::size_t m = lines_->size();
        if (m < 2) return;

        build_schedules();

        cut_.resize(m);
        pos_.resize(m);
        std::iota(cut_.begin(), cut_.end(), static_cast<SegId>(0));
        // top first: slope ascending, parallels by intercept descending
        std::sort(cut_.begin(), cut_.end(), [&](SegId a, SegId b) {
            const Line& la = line(a);
            const Line& lb = line(b);
            if (!parallel(la, lb)) return slope_less(la, lb);
            metrics::count_op();
            return la.c * lb.b > lb.c * la.b;
        });
        for (std::size_t i = 0; i < m; ++i) pos_[static_cast<std::size_t>(cut_[i])] = i;

        data_index_.emplace(*cfg_);

        in_stack_.assign(m, false);
        for (std::size_t i = 0; i + 1 < m; ++i) push_position(i);

        std::uint64_t steps = 0;
        while (!stack_.empty()) {
            const std::size_t i = stack_.back();
            stack_.pop_back();
            in_stack_[i] = false;
            if (!ready(i)) continue;
            step(i);
            ++steps;
        }
        if (steps != expected_)
            throw std::logic_error("topological sweep stalled: " + std::to_string(steps) + " of " +
                                   std::to_string(expected_));
    }

private:
    const Line& line(SegId s) const { return (*lines_)[static_cast<std::size_t>(s)]; }

    // abscissa as an unnormalized fraction, denominator > 0
    struct FracX {
        Int num, den;
    };

    std::optional<FracX> cross_x(SegId a, SegId b) const {
        const Line& la = line(a);
        const Line& lb = line(b);
        metrics::count_op();
        Int det = la.a * lb.b - lb.a * la.b;
        if (det == 0) return std::nullopt;
        Int num = la.c * lb.b - lb.c * la.b;
        if (det < 0) {
            det = -det;
            num = -num;
        }
        return FracX{std::move(num), std::move(det)};
    }

    static bool frac_less(const FracX& a, const FracX& b) {
        metrics::count_op();
        return a.num * b.den < b.num * a.den;
    }

    static bool frac_equal(const FracX& a, const FracX& b) {
        metrics::count_op();
        return a.num * b.den == b.num * a.den;
    }

    VertexFrac cross_vertex(SegId a, SegId b) const {
        const Line& la = line(a);
        const Line& lb = line(b);
        Int det = la.a * lb.b - lb.a * la.b;
        Int xn = la.c * lb.b - lb.c * la.b;
        Int yn = la.a * lb.c - lb.a * la.c;
        if (det < 0) {
            det = -det;
            xn = -xn;
            yn = -yn;
        }
        return VertexFrac{std::move(xn), std::move(yn), std::move(det)};
    }

    void build_schedules() {
        const std::size_t m = lines_->size();
        schedule_.assign(m, {});
        next_.assign(m, 0);
        std::uint64_t total = 0;
        std::vector<std::pair<FracX, SegId>> keyed;
        for (std::size_t z = 0; z < m; ++z) {
            keyed.clear();
            for (std::size_t o = 0; o < m; ++o) {
                if (o == z) continue;
                if (auto x = cross_x(static_cast<SegId>(z), static_cast<SegId>(o)))
                    keyed.push_back({std::move(*x), static_cast<SegId>(o)});
            }
            std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
                if (frac_less(a.first, b.first)) return true;
                if (frac_less(b.first, a.first)) return false;
                return a.second < b.second;  // pencil ties: any fixed order works
            });
            auto& sched = schedule_[z];
            sched.reserve(keyed.size());
            for (auto& [x, id] : keyed) sched.push_back(id);
            total += sched.size();
        }
        gauge_.resize(total * sizeof(SegId));
    }

    // Abscissa of the right endpoint of z's current edge.
    std::optional<FracX> next_x(SegId z) const {
        const auto& sched = schedule_[static_cast<std::size_t>(z)];
        const std::size_t at = next_[static_cast<std::size_t>(z)];
        if (at >= sched.size()) return std::nullopt;
        return cross_x(z, sched[at]);
    }

    bool ready(std::size_t i) const {
        if (i + 1 >= cut_.size()) return false;
        const SegId q = cut_[i];
        const SegId w = cut_[i + 1];
        const Line& lq = line(q);
        const Line& lw = line(w);
        if (parallel(lq, lw)) return false;
        if (!slope_less(lq, lw)) return false;  // already crossed
        const auto x = cross_x(q, w);
        const auto nq = next_x(q);
        const auto nw = next_x(w);
        return nq && nw && frac_equal(*nq, *x) && frac_equal(*nw, *x);
    }

    void push_position(std::size_t i) {
        if (i + 1 >= cut_.size() || in_stack_[i]) return;
        if (!ready(i)) return;
        in_stack_[i] = true;
        stack_.push_back(i);
    }

    // Consume the schedule entry of `partner` on line z; within a pencil
    // the same-abscissa block may hold several partners in fixed order, so
    // bring the right one to the cursor first.
    void consume(SegId z, SegId partner) {
        auto& sched = schedule_[static_cast<std::size_t>(z)];
        std::size_t& at = next_[static_cast<std::size_t>(z)];
        std::size_t found = at;
        while (found < sched.size() && sched[found] != partner) ++found;
        if (found >= sched.size())
            throw std::logic_error("topological sweep consumed a crossing out of order");
        std::swap(sched[at], sched[found]);
        ++at;
    }

    static bool on_line_fraction(const Line& l, const VertexFrac& v) {
        metrics::count_op();
        return l.a * v.xn + l.b * v.yn == l.c * v.den;
    }

    void step(std::size_t i) {
        const SegId q = cut_[i];      // above, smaller slope
        const SegId w = cut_[i + 1];  // below, larger slope
        const VertexFrac v = cross_vertex(q, w);

        if (i > 0 && on_line_fraction(line(cut_[i - 1]), v) && !data_index_->contains(v))
            concurrent(q, w, cut_[i - 1]);
        if (i + 2 < cut_.size() && on_line_fraction(line(cut_[i + 2]), v) && !data_index_->contains(v))
            concurrent(q, w, cut_[i + 2]);

        tracker_->process_pair_vertex(q, w, v);

        cut_[i] = w;
        cut_[i + 1] = q;
        pos_[static_cast<std::size_t>(w)] = i;
        pos_[static_cast<std::size_t>(q)] = i + 1;
        consume(q, w);
        consume(w, q);

        if (i > 0) push_position(i - 1);
        push_position(i);
        if (i + 1 < cut_.size()) push_position(i + 1);
    }

    [[noreturn]] void concurrent(SegId a, SegId b, SegId c) const {
        throw degenerate_input("three segment lines concurrent away from the data points (segments " +
                                   std::to_string(a) + ", " + std::to_string(b) + ", " +
                                   std::to_string(c) + ")",
                               {});
    }

    const ColourConfiguration* cfg_;
    const std::vector<Line>* lines_;
    std::uint64_t expected_;
    DepthTracker* tracker_;
    std::vector<SegId> cut_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<SegId>> schedule_;
    std::vector<std::size_t> next_;
    std::vector<std::size_t> stack_;
    std::vector<char> in_stack_;
    std::optional<detail::DataPointIndex> data_index_;
    metrics::Tracked gauge_;
};

}  // namespace csdepth::detail
