#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "test_support.hpp"

using namespace csdepth;
using testsup::pt;

TEST_CASE("radial orders around every point") {
    SECTION("triangle") {
        const auto cfg = testsup::singleton_triangle();
        const auto radial = sort_around_all(cfg);
        REQUIRE(radial.around.size() == 3);
        for (const auto& list : radial.around) CHECK(list.size() == 2);
    }

    SECTION("collinear triples are accepted here") {
        const ColourConfiguration cfg{{{pt(0, 0), pt(2, 2)}, {pt(4, 4)}, {pt(1, 5)}}};
        CHECK_NOTHROW(sort_around_all(cfg));
    }

    SECTION("orders agree with pairwise key comparison") {
        const auto cfg = testsup::seven_point_config();
        const auto radial = sort_around_all(cfg);
        const AngularOrder order;
        for (PtId a = 0; a < static_cast<PtId>(cfg.n()); ++a) {
            const auto& list = radial.around[static_cast<std::size_t>(a)];
            REQUIRE(list.size() == cfg.n() - 1);
            for (std::size_t i = 1; i < list.size(); ++i) {
                const auto ka = order.key(cfg.point(a), cfg.point(list[i - 1]));
                const auto kb = order.key(cfg.point(a), cfg.point(list[i]));
                CHECK(order.compare(ka, kb) <= 0);
            }
        }
    }
}

TEST_CASE("segment identities are stable") {
    const auto cfg = testsup::seven_point_config();
    const SegmentSet segs(cfg);
    CHECK(segs.size() == 16);  // 3*2 + 3*2 + 2*2
    const SegId id = segs.id(PointRef{1, 0}, PointRef{2, 0});
    CHECK(cfg.ref(segs[id].tail).colour == 1);
    CHECK(cfg.ref(segs[id].head).colour == 2);
}

TEST_CASE("side counts") {
    SECTION("three singletons: the third point sits on one side") {
        const auto cfg = testsup::singleton_triangle();
        const auto segs = side_counts(cfg, sort_around_all(cfg));
        REQUIRE(segs.size() == 3);
        for (SegId s = 0; s < 3; ++s) {
            CHECK(segs[s].r + segs[s].l == 1);
        }
    }

    SECTION("no third-colour points leaves both sides empty") {
        const ColourConfiguration cfg{{{pt(1, 0), pt(0, 5)}, {pt(-1, 1), pt(3, 3)}, {}}};
        const auto segs = side_counts(cfg, sort_around_all(cfg));
        for (const ColourfulSegment& s : segs.all()) {
            CHECK(s.r == 0);
            CHECK(s.l == 0);
        }
    }

    SECTION("first green to first blue of the seven-point sample") {
        const auto cfg = testsup::seven_point_config();
        const auto segs = side_counts(cfg, sort_around_all(cfg));
        const SegId id = segs.id(PointRef{1, 0}, PointRef{2, 0});
        const auto [r, l] = oracle::side_counts_bruteforce(cfg.point(PointRef{1, 0}),
                                                           cfg.point(PointRef{2, 0}), 1, 2, cfg);
        CHECK(segs[id].r == r);
        CHECK(segs[id].l == l);
        CHECK(segs[id].r == 2);
        CHECK(segs[id].l == 1);
    }

    SECTION("equivalence with the orient-test oracle") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const auto cfg = testsup::random_config(seed * 61, 3 + seed % 3, 5 + seed % 25);
            const auto segs = side_counts(cfg, sort_around_all(cfg));
            std::int64_t expected_count = 0;
            for (std::size_t a = 0; a < cfg.k(); ++a)
                for (std::size_t b = a + 1; b < cfg.k(); ++b)
                    expected_count += static_cast<std::int64_t>(cfg.class_size(a)) *
                                      static_cast<std::int64_t>(cfg.class_size(b));
            CHECK(static_cast<std::int64_t>(segs.size()) == expected_count);
            for (const ColourfulSegment& s : segs.all()) {
                const auto [r, l] = oracle::side_counts_bruteforce(
                    cfg.point(s.tail), cfg.point(s.head), cfg.colour_of(s.tail), cfg.colour_of(s.head), cfg);
                CHECK(s.r == r);
                CHECK(s.l == l);
            }
        }
    }

    SECTION("r + l covers the other colours") {
        for (std::uint64_t seed = 30; seed <= 40; ++seed) {
            const auto cfg = testsup::random_config(seed * 67, 4, 14);
            const auto segs = side_counts(cfg, sort_around_all(cfg));
            for (const ColourfulSegment& s : segs.all()) {
                std::int64_t rest = 0;
                for (std::size_t c = 0; c < cfg.k(); ++c)
                    if (static_cast<std::int32_t>(c) != cfg.colour_of(s.tail) &&
                        static_cast<std::int32_t>(c) != cfg.colour_of(s.head))
                        rest += static_cast<std::int64_t>(cfg.class_size(c));
                CHECK(s.r + s.l == rest);
            }
        }
    }

    SECTION("mirroring the y axis swaps the sides") {
        const auto cfg = testsup::random_config(99, 3, 12);
        const auto segs = side_counts(cfg, sort_around_all(cfg));
        std::vector<std::vector<Point>> flipped(cfg.k());
        for (std::size_t c = 0; c < cfg.k(); ++c)
            for (const Point& p : cfg.colour_class(c)) flipped[c].push_back(Point{p.x, -p.y});
        const ColourConfiguration mirror(std::move(flipped));
        const auto mirrored = side_counts(mirror, sort_around_all(mirror));
        REQUIRE(mirrored.size() == segs.size());
        for (SegId s = 0; s < static_cast<SegId>(segs.size()); ++s) {
            CHECK(segs[s].r == mirrored[s].l);
            CHECK(segs[s].l == mirrored[s].r);
        }
    }

    SECTION("a relevant point on a segment line is rejected") {
        // blue point exactly on the red-green segment's line
        const ColourConfiguration cfg{{{pt(0, 0)}, {pt(4, 2)}, {pt(2, 1), pt(5, 9)}}};
        CHECK_THROWS_AS(side_counts(cfg, sort_around_all(cfg)), degenerate_input);
    }

    SECTION("an endpoint-coloured point on the line is tolerated") {
        // the second green point lies on the red-green line beyond the head
        const ColourConfiguration cfg{{{pt(0, 0)}, {pt(2, 1), pt(4, 2)}, {pt(1, 5), pt(3, -4)}}};
        const auto segs = side_counts(cfg, sort_around_all(cfg));
        const SegId id = segs.id(PointRef{0, 0}, PointRef{1, 0});
        const auto [r, l] = oracle::side_counts_bruteforce(pt(0, 0), pt(2, 1), 0, 1, cfg);
        CHECK(segs[id].r == r);
        CHECK(segs[id].l == l);
    }
}

TEST_CASE("segment lines and intersections") {
    const Line l1 = line_through(pt(0, 0), pt(2, 1));
    const Line l2 = line_through(pt(0, 2), pt(2, 1));
    CHECK_FALSE(l1.vertical());
    CHECK(on_line(l1, pt(4, 2)));
    CHECK_FALSE(on_line(l1, pt(4, 3)));
    const auto v = intersect(l1, l2);
    REQUIRE(v.has_value());
    CHECK(*v == pt(2, 1));
    CHECK_FALSE(intersect(l1, l1).has_value());
    CHECK(line_through(pt(1, -3), pt(1, 7)).vertical());
    CHECK(parallel(line_through(pt(0, 0), pt(3, 1)), line_through(pt(0, 5), pt(6, 7))));
    CHECK(slope_less(line_through(pt(0, 0), pt(3, 1)), line_through(pt(0, 0), pt(1, 4))));
}
