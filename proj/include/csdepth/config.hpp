#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "angular.hpp"
#include "point.hpp"

namespace csdepth {

using PtId = std::int32_t;

// The input point set partitioned into k >= 3 colour classes. Points are
// addressable both by (colour, index) and by a flat id used by the
// arrangement machinery.
class ColourConfiguration {
public:
    explicit ColourConfiguration(std::vector<std::vector<Point>> classes)
        : classes_(std::move(classes)) {
        if (classes_.size() < 3)
            throw std::invalid_argument("a configuration needs at least 3 colour classes");
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            for (std::size_t j = 0; j < classes_[c].size(); ++j) {
                refs_.push_back({static_cast<std::int32_t>(c), static_cast<std::int32_t>(j)});
                flat_.push_back(classes_[c][j]);
            }
        }
        require_distinct();
    }

    std::size_t k() const { return classes_.size(); }
    std::size_t n() const { return flat_.size(); }
    std::size_t class_size(std::size_t c) const { return classes_[c].size(); }

    const std::vector<std::vector<Point>>& classes() const { return classes_; }
    const std::vector<Point>& colour_class(std::size_t c) const { return classes_[c]; }

    const Point& point(PtId id) const { return flat_[static_cast<std::size_t>(id)]; }
    const Point& point(const PointRef& r) const {
        return classes_[static_cast<std::size_t>(r.colour)][static_cast<std::size_t>(r.index)];
    }
    const PointRef& ref(PtId id) const { return refs_[static_cast<std::size_t>(id)]; }
    std::int32_t colour_of(PtId id) const { return refs_[static_cast<std::size_t>(id)].colour; }

    PtId flat_id(const PointRef& r) const {
        std::size_t base = 0;
        for (std::int32_t c = 0; c < r.colour; ++c) base += classes_[static_cast<std::size_t>(c)].size();
        return static_cast<PtId>(base + static_cast<std::size_t>(r.index));
    }

    const std::vector<Point>& flat_points() const { return flat_; }

    std::size_t nonempty_classes() const {
        std::size_t c = 0;
        for (const auto& cls : classes_)
            if (!cls.empty()) ++c;
        return c;
    }

private:
    void require_distinct() const {
        std::vector<PtId> ids(flat_.size());
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [this](PtId a, PtId b) {
            const Point& pa = point(a);
            const Point& pb = point(b);
            if (pa == pb) return a < b;
            return lex_less(pa, pb);
        });
        for (std::size_t i = 1; i < ids.size(); ++i) {
            if (point(ids[i - 1]) == point(ids[i]))
                throw degenerate_input("coincident points: " + describe(ref(ids[i - 1])) + " and " +
                                           describe(ref(ids[i])),
                                       {ref(ids[i - 1]), ref(ids[i])});
        }
    }

    std::vector<std::vector<Point>> classes_;
    std::vector<Point> flat_;
    std::vector<PointRef> refs_;
};

}  // namespace csdepth
