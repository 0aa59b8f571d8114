#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "fpp/env.hpp"
#include "fpp/montecarlo.hpp"

TEST_SUITE_BEGIN("env");

TEST_CASE("weights are a pure function of the coordinates") {
    fpp::Environment env(42, 3, fpp::WeightDist::uniform(0, 1));
    double a = env.horizontal_weight(17, -5);
    double b = env.horizontal_weight(4, 9);
    // repeat queries and reversed order reproduce the same bits
    CHECK(env.horizontal_weight(17, -5) == a);
    CHECK(env.horizontal_weight(4, 9) == b);
    fpp::Environment env2(42, 3, fpp::WeightDist::uniform(0, 1));
    CHECK(env2.horizontal_weight(4, 9) == b);
    CHECK(env2.horizontal_weight(17, -5) == a);
    // distinct replicas / seeds decorrelate
    fpp::Environment other(42, 4, fpp::WeightDist::uniform(0, 1));
    CHECK(other.horizontal_weight(17, -5) != a);
    fpp::Environment seeded(43, 3, fpp::WeightDist::uniform(0, 1));
    CHECK(seeded.horizontal_weight(17, -5) != a);
}

TEST_CASE("hash avalanche") {
    // flipping one input bit flips about half of the 64 output bits
    const int trials = 10000;
    double acc = 0;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t k = static_cast<std::uint64_t>(i) * 2654435761u + 12345;
        std::uint64_t y = static_cast<std::uint64_t>(i) * 40503u + 999;
        int bit = i % 64;
        std::uint64_t h1 = fpp::rng::counter_hash(7, 1, fpp::rng::stream_edge, k, y);
        std::uint64_t h2 =
            fpp::rng::counter_hash(7, 1, fpp::rng::stream_edge, k ^ (1ULL << bit), y);
        acc += std::popcount(h1 ^ h2);
    }
    double mean = acc / trials;
    CHECK(mean > 31.5);
    CHECK(mean < 32.5);
}

TEST_CASE("uniform01 range and moments") {
    double lo = 1, hi = 0, acc = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        double u = fpp::rng::uniform01(1, 2, fpp::rng::stream_misc, i, 7);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        acc += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(std::fabs(acc / trials - 0.5) < 4 * std::sqrt(1.0 / 12 / trials));
}

TEST_CASE("overlay shifts queries by the prefix sum") {
    fpp::Environment base(9, 0, fpp::WeightDist::uniform(0, 1));
    std::vector<int> omega{1, 0, 1};
    // prefix: 0, 1, 1, 2
    fpp::Environment minus = base.with_overlay(omega, -1);
    CHECK(minus.horizontal_weight(3, 5) == base.horizontal_weight(3, 3));  // y - 2
    CHECK(minus.horizontal_weight(2, 5) == base.horizontal_weight(2, 4));  // y - 1
    CHECK(minus.horizontal_weight(1, 5) == base.horizontal_weight(1, 4));
    fpp::Environment plus = base.with_overlay(omega, +1);
    CHECK(plus.horizontal_weight(3, 5) == base.horizontal_weight(3, 7));

    // composition restores the base field bit-exactly
    fpp::Environment round = plus.with_overlay(omega, -1);
    for (long long k = 1; k <= 3; ++k)
        for (long long y = -4; y <= 4; ++y)
            CHECK(round.horizontal_weight(k, y) == base.horizontal_weight(k, y));

    CHECK_THROWS_AS(base.with_overlay(omega, 0), fpp::domain_error);
    CHECK_THROWS_AS(base.with_overlay({1, 2, 0}, 1), fpp::domain_error);
}

TEST_CASE("negated field reflects heights") {
    fpp::Environment base(11, 0, fpp::WeightDist::exponential(1));
    fpp::Environment neg = base.with_negated_y();
    for (long long y = -3; y <= 3; ++y)
        CHECK(neg.horizontal_weight(2, y) == base.horizontal_weight(2, -y));
    fpp::Environment round = neg.with_negated_y();
    CHECK(round.horizontal_weight(5, 1) == base.horizontal_weight(5, 1));
}

TEST_CASE("truncated environment couples as a pointwise min") {
    fpp::WeightDist raw = fpp::WeightDist::exponential(0.7);
    fpp::WeightDist cut = fpp::truncate(raw, 1.5);
    fpp::Environment e_raw(5, 2, raw);
    fpp::Environment e_cut(5, 2, cut);
    for (long long k = 1; k <= 50; ++k)
        for (long long y = -5; y <= 5; ++y)
            CHECK(e_cut.horizontal_weight(k, y) ==
                  std::min(e_raw.horizontal_weight(k, y), 1.5));
}

TEST_CASE("site weights") {
    CHECK(fpp::site_weight(3, 1, 2, 2, 1.0) == 0.0);
    CHECK(fpp::site_weight(3, 1, 2, 2, 0.0) == 1.0);
    long long zeros = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
        if (fpp::site_weight(3, 1, i, 0, 0.3) == 0.0) ++zeros;
    CHECK(std::fabs(double(zeros) / trials - 0.3) < 4 * std::sqrt(0.3 * 0.7 / trials));
    // site stream is independent of the edge stream
    fpp::Environment env(3, 1, fpp::WeightDist::uniform(0, 1));
    bool any_diff = false;
    for (int i = 1; i <= 10 && !any_diff; ++i)
        any_diff = (env.horizontal_weight(i, 0) < 0.3) !=
                   (fpp::site_weight(3, 1, i, 0, 0.3) == 0.0);
    CHECK(any_diff);
}

TEST_CASE("detour on a constant field") {
    fpp::Environment env(1, 0, fpp::WeightDist::dirac(1));
    fpp::DetourReport rep = fpp::detour(env, 4, 2, 2.0);
    CHECK(rep.k_B == 1);
    CHECK(rep.edge_weight == 1.0);
    CHECK(rep.dt_B == 3.0);
    CHECK(rep.k == 4);
    CHECK(rep.y == 2);
    // no qualifying edge below the support: pre-check throws
    CHECK_THROWS_AS(fpp::detour(env, 4, 2, 1.0), fpp::domain_error);
    CHECK_THROWS_AS(fpp::detour(env, 4, 2, 0.5), fpp::domain_error);
}

TEST_CASE("detour planted example") {
    fpp::Environment base(1, 0, fpp::WeightDist::uniform(1, 2));
    fpp::Environment env = base.with_field([](long long k, long long y) {
        if (k == 5 && y == 4) return 1.5;
        return 10.0;
    });
    fpp::DetourReport rep = fpp::detour(env, 5, 3, 2.0);
    CHECK(rep.k_B == 1);
    CHECK(rep.edge_weight == 1.5);
    CHECK(rep.dt_B == 3.5);

    fpp::Environment far = base.with_field([](long long k, long long y) {
        if (k == 5 && y == 0) return 1.25;
        return 10.0;
    });
    fpp::DetourReport rep2 = fpp::detour(far, 5, 3, 2.0);
    CHECK(rep2.k_B == 3);
    CHECK(rep2.dt_B == 7.25);
}

TEST_CASE("detour distance is geometric for a two-point law") {
    // B = 2 on twopoint(1,3,1/2): each rung has two candidate edges, so
    // success probability 3/4 per distance and E[k_B] = 4/3
    fpp::WeightDist tp = fpp::WeightDist::two_point(1, 3, 0.5);
    const long long trials = 100000;
    double acc = 0;
    std::map<long long, long long> hist;
    for (long long i = 0; i < trials; ++i) {
        fpp::Environment env(21, static_cast<std::uint64_t>(i), tp);
        fpp::DetourReport rep = fpp::detour(env, 1, 0, 2.0);
        CHECK(rep.edge_weight == 1.0);
        acc += static_cast<double>(rep.k_B);
        ++hist[rep.k_B];
    }
    double mean = acc / static_cast<double>(trials);
    CHECK(mean == doctest::Approx(4.0 / 3).epsilon(0.02));
    // geometric tail: log-frequency decays linearly in the distance
    std::vector<double> ks, logf;
    for (auto& [k, c] : hist) {
        if (k > 4 || c == 0) continue;
        ks.push_back(static_cast<double>(k));
        logf.push_back(std::log(static_cast<double>(c) / static_cast<double>(trials)));
    }
    CHECK(fpp::regression_slope(ks, logf) ==
          doctest::Approx(std::log(0.25)).epsilon(0.05));
}

TEST_CASE("detour cap exhaustion raises a pathology error") {
    fpp::Environment env(1, 0, fpp::WeightDist::two_point(1, 3, 0.5));
    fpp::Environment blocked = env.with_field([](long long, long long) { return 3.0; });
    CHECK_THROWS_AS(fpp::detour(blocked, 1, 0, 2.0, 50), fpp::env_pathology_error);
}

TEST_SUITE_END();
