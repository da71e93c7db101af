#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "test_support.hpp"

using namespace csdepth;
using testsup::pt;

TEST_CASE("the two containment routes agree") {
    gen::Rng rng(3);
    int compared = 0;
    while (compared < 500) {
        const Point a = pt(rng.range(-12, 12), rng.range(-12, 12));
        const Point b = pt(rng.range(-12, 12), rng.range(-12, 12));
        const Point c = pt(rng.range(-12, 12), rng.range(-12, 12));
        const Point x = pt(rng.range(-4, 4), rng.range(-4, 4));
        const auto arc = oracle::arc_triangle_contains(a, b, c, x);
        if (!arc) continue;
        CHECK(*arc == oracle::closed_triangle_contains(a, b, c, x));
        ++compared;
    }
}

TEST_CASE("closed containment includes the boundary") {
    const Point a = pt(0, 0), b = pt(4, 0), c = pt(0, 4);
    CHECK(oracle::closed_triangle_contains(a, b, c, pt(1, 1)));
    CHECK(oracle::closed_triangle_contains(a, b, c, pt(2, 0)));  // on an edge
    CHECK(oracle::closed_triangle_contains(a, b, c, pt(4, 0)));  // a vertex
    CHECK_FALSE(oracle::closed_triangle_contains(a, b, c, pt(3, 3)));
}

TEST_CASE("brute-force depth on the fixtures") {
    CHECK(oracle::csd_bruteforce(pt(0, 0), testsup::singleton_triangle()) == 1);
    CHECK(oracle::csd_bruteforce(pt(0, 0), testsup::eight_point_config()) == 6);

    oracle::OracleReport report;
    oracle::csd_bruteforce(pt(0, 0), testsup::eight_point_config(), &report);
    CHECK(report.value == 6);
    CHECK(report.work > 0);
}

TEST_CASE("monochrome brute force") {
    const std::vector<Point> tri = {pt(2, 0), pt(-1, 2), pt(-1, -2)};
    CHECK(oracle::mono_depth_bruteforce(pt(0, 0), tri) == 1);
    CHECK(oracle::hsd_bruteforce(pt(0, 0), tri) == 1);
    const std::vector<Point> far = {pt(5, 1), pt(6, 3), pt(7, 1)};
    CHECK(oracle::hsd_bruteforce(pt(0, 0), far) == 0);
}

TEST_CASE("side-count brute force flips under mirroring") {
    const auto cfg = testsup::seven_point_config();
    const auto [r, l] =
        oracle::side_counts_bruteforce(cfg.point(PointRef{1, 0}), cfg.point(PointRef{2, 0}), 1, 2, cfg);
    std::vector<std::vector<Point>> flipped(cfg.k());
    for (std::size_t c = 0; c < cfg.k(); ++c)
        for (const Point& p : cfg.colour_class(c)) flipped[c].push_back(Point{p.x, -p.y});
    const ColourConfiguration mirror(std::move(flipped));
    const auto [rm, lm] =
        oracle::side_counts_bruteforce(mirror.point(PointRef{1, 0}), mirror.point(PointRef{2, 0}), 1, 2, mirror);
    CHECK(r == lm);
    CHECK(l == rm);
}

TEST_CASE("median brute force") {
    SECTION("single colourful triangle") {
        const auto result = oracle::median_bruteforce(testsup::singleton_triangle());
        CHECK(result.depth == 1);
        CHECK(result.witnesses.size() == 3);
        CHECK(result.non_data_witnesses == 0);
    }
    SECTION("seven-point sample") {
        const auto result = oracle::median_bruteforce(testsup::seven_point_config());
        CHECK(result.depth == 8);
        REQUIRE(result.witnesses.size() == 1);
        CHECK(result.witnesses[0] == pt(16, 20));
        CHECK(result.non_data_witnesses == 0);
    }
    SECTION("candidate crossings of the seven-point sample") {
        // nine interior crossings; three reach depth 6, the best data point 8
        const auto cfg = testsup::seven_point_config();
        std::vector<std::pair<Point, Point>> segments;
        for (std::size_t c1 = 0; c1 < cfg.k(); ++c1)
            for (std::size_t c2 = c1 + 1; c2 < cfg.k(); ++c2)
                for (const Point& a : cfg.colour_class(c1))
                    for (const Point& b : cfg.colour_class(c2)) segments.push_back({a, b});
        std::vector<Point> crossings;
        for (std::size_t i = 0; i < segments.size(); ++i)
            for (std::size_t j = i + 1; j < segments.size(); ++j)
                if (auto v = oracle::segment_interior_crossing(segments[i].first, segments[i].second,
                                                               segments[j].first, segments[j].second)) {
                    bool seen = false;
                    for (const Point& w : crossings)
                        if (w == *v) seen = true;
                    if (!seen) crossings.push_back(*v);
                }
        REQUIRE(crossings.size() == 9);
        int at_six = 0;
        for (const Point& v : crossings) {
            const auto d = oracle::csd_bruteforce(v, cfg);
            CHECK(d <= 6);
            if (d == 6) ++at_six;
        }
        CHECK(at_six == 3);
    }
}
