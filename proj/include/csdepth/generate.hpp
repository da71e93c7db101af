#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "scalar.hpp"

namespace csdepth::gen {

// splitmix64: tiny, well-mixed, and identical on every platform, which the
// byte-reproducibility contract of the generator needs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), rejection-free bias below 2^-32 is not
    // acceptable here, so use rejection sampling
    std::uint64_t below(std::uint64_t bound) {
        if (bound < 2) return 0;
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

enum class Distribution { uniform_disc, clustered };

// full keeps configurations usable for the median sweep as well: besides
// the origin-relative constraints it forbids collinear triples and repeated
// x coordinates (vertical colourful segments).
enum class Safety { origin, full };

struct GenSpec {
    std::vector<std::size_t> sizes;  // one entry per colour, k >= 3
    Distribution distribution = Distribution::uniform_disc;
    std::uint64_t seed = 1;
    Safety safety = Safety::full;
    // Lattice radius is radius_scale * n. Larger windows make accidental
    // incidences between segment lines (concurrent triple crossings) rare.
    std::int64_t radius_scale = 8;
};

namespace detail {

struct Constraints {
    std::set<std::pair<std::int64_t, std::int64_t>> points;
    std::set<std::pair<std::int64_t, std::int64_t>> directions;  // reduced, from origin
    std::set<std::int64_t> xs;
    std::vector<std::pair<std::int64_t, std::int64_t>> accepted;
    std::vector<std::set<std::pair<std::int64_t, std::int64_t>>> dirs_from;  // per accepted point
    Safety safety;

    explicit Constraints(Safety s) : safety(s) {}

    static std::pair<std::int64_t, std::int64_t> reduce(std::int64_t dx, std::int64_t dy) {
        std::int64_t g = std::abs(dx);
        std::int64_t h = std::abs(dy);
        while (h) {
            const std::int64_t t = g % h;
            g = h;
            h = t;
        }
        if (g == 0) return {0, 0};
        return {dx / g, dy / g};
    }

    bool admissible(std::int64_t x, std::int64_t y) const {
        if (x == 0 && y == 0) return false;  // origin is the default query
        if (points.count({x, y})) return false;
        const auto dir = reduce(x, y);
        if (directions.count(dir) || directions.count({-dir.first, -dir.second})) return false;
        if (safety == Safety::full) {
            if (xs.count(x)) return false;
            for (std::size_t i = 0; i < accepted.size(); ++i) {
                const auto d = reduce(x - accepted[i].first, y - accepted[i].second);
                if (dirs_from[i].count(d) || dirs_from[i].count({-d.first, -d.second})) return false;
            }
        }
        return true;
    }

    void accept(std::int64_t x, std::int64_t y) {
        points.insert({x, y});
        directions.insert(reduce(x, y));
        if (safety == Safety::full) {
            xs.insert(x);
            for (std::size_t i = 0; i < accepted.size(); ++i)
                dirs_from[i].insert(reduce(x - accepted[i].first, y - accepted[i].second));
            accepted.push_back({x, y});
            dirs_from.emplace_back();
        }
    }
};

}  // namespace detail

// Deterministic for a fixed spec. Points are integer lattice points; the
// rejection loop enforces general position relative to the origin (no
// coincidences, no equal or opposite directions) and, under Safety::full,
// no collinear triples and all-distinct x coordinates.
inline ColourConfiguration generate(const GenSpec& spec) {
    if (spec.sizes.size() < 3) throw std::invalid_argument("generator needs k >= 3 colour classes");
    std::size_t n = 0;
    for (std::size_t s : spec.sizes) n += s;

    Rng rng(spec.seed);
    const std::int64_t radius =
        std::max<std::int64_t>(32, spec.radius_scale * static_cast<std::int64_t>(n));
    detail::Constraints constraints(spec.safety);

    std::vector<std::pair<std::int64_t, std::int64_t>> centres;
    if (spec.distribution == Distribution::clustered) {
        const std::size_t count = std::max<std::size_t>(2, spec.sizes.size());
        for (std::size_t i = 0; i < count; ++i)
            centres.push_back({rng.range(-radius / 2, radius / 2), rng.range(-radius / 2, radius / 2)});
    }

    std::vector<std::vector<Point>> classes(spec.sizes.size());
    std::size_t made = 0;
    for (std::size_t c = 0; c < spec.sizes.size(); ++c) {
        for (std::size_t j = 0; j < spec.sizes[c]; ++j) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                if (attempt > 100000)
                    throw std::runtime_error("generator failed to place a point in general position");
                std::int64_t x, y;
                if (spec.distribution == Distribution::uniform_disc) {
                    x = rng.range(-radius, radius);
                    y = rng.range(-radius, radius);
                    if (x * x + y * y > radius * radius) continue;
                } else {
                    const auto& centre = centres[made % centres.size()];
                    const std::int64_t spread = std::max<std::int64_t>(4, radius / 8);
                    x = centre.first + rng.range(-spread, spread);
                    y = centre.second + rng.range(-spread, spread);
                }
                if (!constraints.admissible(x, y)) continue;
                constraints.accept(x, y);
                classes[c].push_back(Point{Rat(x), Rat(y)});
                ++made;
                break;
            }
        }
    }
    return ColourConfiguration(std::move(classes));
}

}  // namespace csdepth::gen
