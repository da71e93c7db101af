#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "config.hpp"
#include "generate.hpp"
#include "scalar.hpp"

namespace csdepth::perturb {

// Invertible shear x' = x + eps*y. It removes vertical segment lines while
// preserving every incidence and containment relation, so depths and
// witnesses map back exactly.
struct Shear {
    Rat eps;

    Point apply(const Point& p) const { return Point{p.x + eps * p.y, p.y}; }
    Point unapply(const Point& p) const { return Point{p.x - eps * p.y, p.y}; }

    ColourConfiguration apply(const ColourConfiguration& cfg) const {
        std::vector<std::vector<Point>> classes;
        classes.reserve(cfg.k());
        for (const auto& cls : cfg.classes()) {
            classes.emplace_back();
            for (const Point& p : cls) classes.back().push_back(apply(p));
        }
        return ColourConfiguration(std::move(classes));
    }
};

inline bool has_vertical_colourful_pair(const ColourConfiguration& cfg) {
    for (std::size_t a = 0; a < cfg.n(); ++a)
        for (std::size_t b = a + 1; b < cfg.n(); ++b)
            if (cfg.colour_of(static_cast<PtId>(a)) != cfg.colour_of(static_cast<PtId>(b)) &&
                cfg.point(static_cast<PtId>(a)).x == cfg.point(static_cast<PtId>(b)).x)
                return true;
    return false;
}

// Deterministically picks eps = 1/q avoiding the finitely many slopes that
// would map some colourful pair to a vertical line.
inline Shear choose_shear(const ColourConfiguration& cfg, std::uint64_t seed) {
    gen::Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Rat eps(1, rng.range(1000, 1000000));
        bool ok = true;
        for (std::size_t a = 0; a < cfg.n() && ok; ++a)
            for (std::size_t b = a + 1; b < cfg.n() && ok; ++b) {
                if (cfg.colour_of(static_cast<PtId>(a)) == cfg.colour_of(static_cast<PtId>(b))) continue;
                const Point& p = cfg.point(static_cast<PtId>(a));
                const Point& q = cfg.point(static_cast<PtId>(b));
                if (p.x - q.x + eps * (p.y - q.y) == 0) ok = false;
            }
        if (ok) return Shear{eps};
    }
    throw std::runtime_error("no usable shear found");
}

// Rational jitter of magnitude 1/denom. Unlike the shear this changes the
// instance: depths of the result refer to the jittered points.
inline ColourConfiguration jitter(const ColourConfiguration& cfg, std::uint64_t seed, std::int64_t denom) {
    gen::Rng rng(seed);
    std::vector<std::vector<Point>> classes;
    classes.reserve(cfg.k());
    for (const auto& cls : cfg.classes()) {
        classes.emplace_back();
        for (const Point& p : cls) {
            const Rat dx(rng.range(-7, 7), denom);
            const Rat dy(rng.range(-7, 7), denom);
            classes.back().push_back(Point{p.x + dx, p.y + dy});
        }
    }
    return ColourConfiguration(std::move(classes));
}

}  // namespace csdepth::perturb
