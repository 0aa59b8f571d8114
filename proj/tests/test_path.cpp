#include <vector>

#include <doctest.h>

#include "fpp/path.hpp"

TEST_SUITE_BEGIN("path");

namespace {

fpp::PioneerVector pv(std::vector<long long> g, double v) {
    return fpp::make_pioneer(std::move(g), v);
}

}  // namespace

TEST_CASE("ceil slope") {
    CHECK(fpp::ceil_slope(0.0, 10) == 0);
    CHECK(fpp::ceil_slope(1.0, 7) == 7);
    CHECK(fpp::ceil_slope(0.5, 7) == 4);
    CHECK(fpp::ceil_slope(-0.5, 7) == -3);  // ceil(-3.5)
    CHECK(fpp::ceil_slope(0.3, 10) == 3);   // snaps 2.9999999... to 3
    CHECK(fpp::ceil_slope(0.1, 30) == 3);
    CHECK(fpp::ceil_slope(2.0, 1000) == 2000);
    CHECK(fpp::ceil_slope(0.75, 8) == 6);
    CHECK(fpp::ceil_slope(0.76, 8) == 7);
}

TEST_CASE("pioneer construction validates") {
    CHECK_THROWS_AS(pv({1, 2}, 0.0), fpp::domain_error);       // must start at 0
    CHECK_THROWS_AS(pv({0}, 0.0), fpp::domain_error);          // too short
    CHECK_THROWS_AS(pv({0, 0, 0, 1}, 0.0), fpp::domain_error); // endpoint != ceil(vn)
    CHECK_NOTHROW(pv({0, 0, 0, 0}, 0.0));
    CHECK_NOTHROW(pv({0, 2, 2, 1, -1, -1, 4, 6, 5}, 5.0 / 7));
}

TEST_CASE("worked example: turns and strips") {
    // n = 7, heights (0,2,2,1,-1,-1,4,6,5)
    fpp::PioneerVector g = pv({0, 2, 2, 1, -1, -1, 4, 6, 5}, 5.0 / 7);
    fpp::TurnStats t = fpp::turn_stats(g);
    CHECK(t.U == 3);
    CHECK(t.R == 2);
    CHECK(t.D == 3);
    CHECK(t.U + t.R + t.D == g.n + 1);

    fpp::Environment unit(0, 0, fpp::WeightDist::dirac(1));
    CHECK(fpp::passage_time_A(g, unit) == 20.0);  // 13 vertical + 7 horizontal

    fpp::StripStats s = fpp::strip_slope_stats(g, 1, 0.1);
    CHECK(s.down_edges == 4);
    CHECK(s.eta == doctest::Approx(4.0 / 7).epsilon(1e-12));
}

TEST_CASE("turn stats on simple staircases") {
    fpp::TurnStats a = fpp::turn_stats(pv({0, 1, 2, 3, 3}, 1.0));
    CHECK(a.U == 3);
    CHECK(a.R == 1);
    CHECK(a.D == 0);
    fpp::TurnStats b = fpp::turn_stats(pv({0, 0, 0, 0}, 0.0));
    CHECK(b.U == 0);
    CHECK(b.R == 3);
    CHECK(b.D == 0);
    fpp::TurnStats c = fpp::turn_stats(pv({0, -1, -2}, -2.0));
    CHECK(c.U == 0);
    CHECK(c.R == 0);
    CHECK(c.D == 2);
}

TEST_CASE("canonical path from pioneer heights") {
    fpp::PioneerVector g = pv({0, 1, 0}, 0.0);
    fpp::LatticePath p = fpp::path_from_pioneer(g);
    std::vector<std::pair<long long, long long>> want{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK(p.vertices == want);
    CHECK(p.is_semidirected());
    p.validate();

    // heights (0,0,0,0) describe n = 2: two horizontal edges, no vertical steps
    fpp::LatticePath flat = fpp::path_from_pioneer(pv({0, 0, 0, 0}, 0.0));
    CHECK(flat.vertices.size() == 3);
    CHECK(flat.vertices.front() == std::pair<long long, long long>{0, 0});
    CHECK(flat.vertices.back() == std::pair<long long, long long>{2, 0});
}

TEST_CASE("pioneer heights round-trip through the canonical path") {
    // path_from_pioneer is a section of pioneer_vector
    std::vector<std::vector<long long>> cases{
        {0, 0, 0, 0},
        {0, 1, 0},
        {0, 2, 2, 1, -1, -1, 4, 6, 5},
        {0, -3, 5, -2, 0, 1},
        {0, 5, 5, 5},
    };
    for (auto& heights : cases) {
        long long n = static_cast<long long>(heights.size()) - 2;
        long long m = heights.back();
        double v = static_cast<double>(m) / static_cast<double>(n);
        fpp::PioneerVector g = pv(heights, v);
        fpp::LatticePath p = fpp::path_from_pioneer(g);
        fpp::PioneerVector back = fpp::pioneer_vector(p, n, m);
        CHECK(back.gamma == g.gamma);
    }
}

TEST_CASE("passage time sums the canonical path's edges") {
    // environment with F_k(y) = k + |y|/8 distinguishes every edge
    fpp::Environment env =
        fpp::Environment(0, 0, fpp::WeightDist::dirac(1)).with_field([](long long k, long long y) {
            return static_cast<double>(k) + static_cast<double>(y < 0 ? -y : y) / 8.0;
        });
    fpp::PioneerVector g = pv({0, 2, -1, 3}, 1.5);
    // vertical: |2| + |-3| + |4| = 9; horizontal: F_1(2) + F_2(-1) = 1.25 + 2.125
    CHECK(fpp::passage_time_A(g, env) == 9 + 1.25 + 2.125);
}

TEST_CASE("strip statistics") {
    fpp::PioneerVector g = pv({0, 2, 2, 1, -1, -1, 4, 6, 5}, 5.0 / 7);
    CHECK_THROWS_AS(fpp::strip_slope_stats(g, 2, 0.1), fpp::domain_error);  // 2 ∤ 7
    CHECK_THROWS_AS(fpp::strip_slope_stats(g, 0, 0.1), fpp::domain_error);
    CHECK_THROWS_AS(fpp::strip_slope_stats(g, 1, 0.0), fpp::domain_error);

    fpp::StripStats whole = fpp::strip_slope_stats(g, 7, 0.1);
    CHECK(whole.down_edges == 4);
    // single strip: increment 5 <= 7*(5/7+0.1) -> slow
    CHECK(whole.eta == doctest::Approx(1.0).epsilon(1e-12));

    // a single tall jump: one fast strip, one slow strip, no down steps
    fpp::PioneerVector jump = pv({0, 5, 5, 5}, 2.5);
    fpp::StripStats js = fpp::strip_slope_stats(jump, 1, 0.1);
    CHECK(js.down_edges == 0);
    CHECK(js.eta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("normalization to a semi-directed path") {
    SUBCASE("already semi-directed is unchanged") {
        fpp::LatticePath p;
        p.vertices = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {2, 0}};
        fpp::LatticePath q = fpp::normalize_to_semidirected(p);
        CHECK(q.vertices == p.vertices);
    }
    SUBCASE("left-step excursion is replaced by a vertical segment") {
        // go right, up, LEFT, up, right, right: excursion into column 0
        fpp::LatticePath p;
        p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}, {2, 2}};
        fpp::LatticePath q = fpp::normalize_to_semidirected(p);
        CHECK(q.is_semidirected());
        CHECK(q.vertices.front() == std::pair<long long, long long>{0, 0});
        CHECK(q.vertices.back() == std::pair<long long, long long>{2, 2});
        CHECK(q.vertices.size() <= p.vertices.size());
    }
    SUBCASE("loop is erased") {
        fpp::LatticePath p;
        p.vertices = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}, {0, 1}, {1, 1}, {2, 1}};
        fpp::LatticePath q = fpp::normalize_to_semidirected(p);
        CHECK(q.is_semidirected());
        CHECK(q.vertices.back() == std::pair<long long, long long>{2, 1});
    }
    SUBCASE("never increases the passage time") {
        fpp::Environment env(31, 0, fpp::WeightDist::uniform(0, 1));
        auto time_of = [&](const fpp::LatticePath& p) {
            double acc = 0;
            for (std::size_t i = 1; i < p.vertices.size(); ++i) {
                auto [x0, y0] = p.vertices[i - 1];
                auto [x1, y1] = p.vertices[i];
                if (y1 != y0)
                    acc += 1;
                else
                    acc += env.horizontal_weight(std::max(x0, x1), y0);
            }
            return acc;
        };
        // a few hand-built wandering paths
        std::vector<fpp::LatticePath> cases(3);
        cases[0].vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 2}, {2, 2}};
        cases[1].vertices = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}, {1, 0}, {2, 0}};
        cases[2].vertices = {{0, 0}, {1, 0}, {2, 0}, {1, 0}, {1, 1}, {2, 1}};
        for (auto& p : cases) {
            fpp::LatticePath q = fpp::normalize_to_semidirected(p);
            CHECK(q.is_semidirected());
            CHECK(time_of(q) <= time_of(p));
            CHECK(q.vertices.front() == p.vertices.front());
            CHECK(q.vertices.back() == p.vertices.back());
        }
    }
}

TEST_SUITE_END();
