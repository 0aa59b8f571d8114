#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include "fpp/dist.hpp"
#include "fpp/errors.hpp"
#include "fpp/rng.hpp"

TEST_SUITE_BEGIN("dist");

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(fpp::WeightDist::dirac(-1), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::two_point(2, 1, 0.5), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::two_point(1, 1, 0.5), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::two_point(-1, 1, 0.5), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::two_point(0, 1, 0.0), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::two_point(0, 1, 1.0), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::uniform(2, 1), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::uniform(-1, 1), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::exponential(0), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::exponential(-2), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::empirical({1, 1}, {0.5, 0.5}), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::empirical({1, 2}, {0.5, 0.4}), fpp::config_error);
    CHECK_THROWS_AS(fpp::WeightDist::empirical({}, {}), fpp::config_error);
    CHECK_NOTHROW(fpp::WeightDist::dirac(0));
    CHECK_NOTHROW(fpp::WeightDist::empirical({1, 2, 4}, {0.25, 0.25, 0.5}));
}

TEST_CASE("inverse cdf values") {
    fpp::WeightDist tp = fpp::WeightDist::two_point(1, 3, 0.5);
    CHECK(tp.inv_cdf(0.25) == 1.0);
    CHECK(tp.inv_cdf(0.5) == 1.0);  // boundary goes to the low atom
    CHECK(tp.inv_cdf(0.7) == 3.0);
    CHECK_THROWS_AS(tp.inv_cdf(0.0), fpp::domain_error);
    CHECK_THROWS_AS(tp.inv_cdf(1.0), fpp::domain_error);

    fpp::WeightDist un = fpp::WeightDist::uniform(1, 2);
    CHECK(un.inv_cdf(0.5) == 1.5);
    CHECK(un.inv_cdf(0.25) == 1.25);

    fpp::WeightDist ex = fpp::WeightDist::exponential(2);
    CHECK(ex.inv_cdf(0.5) == doctest::Approx(std::log(2.0) / 2).epsilon(1e-12));

    fpp::WeightDist em = fpp::WeightDist::empirical({1, 2, 4}, {0.25, 0.25, 0.5});
    CHECK(em.inv_cdf(0.2) == 1.0);
    CHECK(em.inv_cdf(0.25) == 1.0);
    CHECK(em.inv_cdf(0.3) == 2.0);
    CHECK(em.inv_cdf(0.6) == 4.0);
}

TEST_CASE("cdf and left limit") {
    fpp::WeightDist tp = fpp::WeightDist::two_point(1, 3, 0.5);
    CHECK(tp.cdf(0.5) == 0.0);
    CHECK(tp.cdf(1.0) == 0.5);
    CHECK(tp.cdf(2.9) == 0.5);
    CHECK(tp.cdf(3.0) == 1.0);
    CHECK(tp.cdf_left(1.0) == 0.0);
    CHECK(tp.cdf_left(3.0) == 0.5);
    CHECK(tp.cdf_left(3.5) == 1.0);

    fpp::WeightDist ex = fpp::WeightDist::exponential(1);
    CHECK(ex.cdf(1.0) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(ex.cdf_left(1.0) == ex.cdf(1.0));  // continuous law
}

TEST_CASE("support summary") {
    fpp::DistSummary s1 = fpp::WeightDist::two_point(1, 3, 0.5).summary();
    CHECK(s1.t0 == 1.0);
    CHECK(s1.atom_at_t0 == 0.5);
    CHECK(s1.mean == 2.0);
    CHECK_FALSE(s1.degenerate_zero);

    fpp::DistSummary s2 = fpp::WeightDist::uniform(1, 2).summary();
    CHECK(s2.t0 == 1.0);
    CHECK(s2.atom_at_t0 == 0.0);
    CHECK(s2.mean == 1.5);

    fpp::DistSummary s3 = fpp::WeightDist::dirac(0).summary();
    CHECK(s3.t0 == 0.0);
    CHECK(s3.atom_at_t0 == 1.0);
    CHECK(s3.degenerate_zero);

    fpp::DistSummary s4 = fpp::WeightDist::exponential(2).summary();
    CHECK(s4.t0 == 0.0);
    CHECK(s4.atom_at_t0 == 0.0);
    CHECK(s4.mean == 0.5);
    CHECK_FALSE(s4.degenerate_zero);  // no atom at zero
}

TEST_CASE("sample means match analytic means") {
    const std::uint64_t trials = 200000;
    auto sample_mean = [&](const fpp::WeightDist& d) {
        double acc = 0;
        for (std::uint64_t i = 0; i < trials; ++i)
            acc += d.inv_cdf(fpp::rng::uniform01(99, 0, fpp::rng::stream_misc,
                                                 static_cast<long long>(i), 0));
        return acc / static_cast<double>(trials);
    };
    // 4-sigma gates on the Monte Carlo error
    fpp::WeightDist tp = fpp::WeightDist::two_point(1, 3, 0.5);
    CHECK(std::fabs(sample_mean(tp) - 2.0) < 4 * 1.0 / std::sqrt(double(trials)));
    fpp::WeightDist un = fpp::WeightDist::uniform(1, 2);
    CHECK(std::fabs(sample_mean(un) - 1.5) <
          4 * std::sqrt(1.0 / 12) / std::sqrt(double(trials)));
    fpp::WeightDist ex = fpp::WeightDist::exponential(0.5);
    CHECK(std::fabs(sample_mean(ex) - 2.0) < 4 * 2.0 / std::sqrt(double(trials)));
    fpp::WeightDist em = fpp::WeightDist::empirical({1, 2, 4}, {0.25, 0.25, 0.5});
    CHECK(std::fabs(sample_mean(em) - 2.75) < 4 * 1.5 / std::sqrt(double(trials)));
}

TEST_CASE("truncation") {
    // folding a two-point law
    fpp::WeightDist tp = fpp::truncate(fpp::WeightDist::two_point(1, 3, 0.5), 2.0);
    CHECK(tp.inv_cdf(0.25) == 1.0);
    CHECK(tp.inv_cdf(0.75) == 2.0);
    CHECK(tp.mean() == 1.5);
    CHECK(tp.t0() == 1.0);

    // truncation below the support bottom is rejected
    CHECK_THROWS_AS(fpp::truncate(fpp::WeightDist::two_point(1, 3, 0.5), 1.0),
                    fpp::domain_error);
    CHECK_THROWS_AS(fpp::truncate(fpp::WeightDist::uniform(1, 2), 0.5),
                    fpp::domain_error);

    // uniform truncated: atom of mass 1/2 appears at the bound
    fpp::WeightDist un = fpp::truncate(fpp::WeightDist::uniform(1, 2), 1.5);
    CHECK(un.inv_cdf(0.25) == 1.25);
    CHECK(un.inv_cdf(0.75) == 1.5);
    CHECK(un.cdf(1.5) == 1.0);
    CHECK(un.cdf_left(1.5) == 0.5);
    CHECK(un.mean() == doctest::Approx(0.5 * 1.25 + 0.5 * 1.5).epsilon(1e-12));

    // exponential truncated mean: (1 - exp(-lambda B)) / lambda
    fpp::WeightDist ex = fpp::truncate(fpp::WeightDist::exponential(1), 2.0);
    CHECK(ex.mean() == doctest::Approx(1 - std::exp(-2.0)).epsilon(1e-12));

    // monotone coupling: truncated draw == min(raw draw, bound) at equal u
    fpp::WeightDist raw = fpp::WeightDist::exponential(1);
    for (int i = 0; i < 1000; ++i) {
        double u = fpp::rng::uniform01(7, 0, fpp::rng::stream_misc, i, 1);
        CHECK(ex.inv_cdf(u) == std::min(raw.inv_cdf(u), 2.0));
    }
    fpp::WeightDist unr = fpp::WeightDist::uniform(1, 2);
    for (int i = 0; i < 1000; ++i) {
        double u = fpp::rng::uniform01(7, 0, fpp::rng::stream_misc, i, 2);
        CHECK(un.inv_cdf(u) == std::min(unr.inv_cdf(u), 1.5));
    }

    // empirical law folds trailing atoms onto the bound
    fpp::WeightDist em =
        fpp::truncate(fpp::WeightDist::empirical({1, 2, 4}, {0.25, 0.25, 0.5}), 3.0);
    CHECK(em.inv_cdf(0.6) == 3.0);
    CHECK(em.mean() == doctest::Approx(0.25 * 1 + 0.25 * 2 + 0.5 * 3).epsilon(1e-12));
}

TEST_CASE("bernoulli reduction") {
    SUBCASE("two-point law reduces to itself") {
        fpp::BernoulliReduction red =
            fpp::bernoulli_reduction(fpp::WeightDist::two_point(1, 3, 0.5), 1.0);
        CHECK_FALSE(red.degenerate);
        CHECK(red.threshold == 3.0);
        CHECK(red.p_lo == 0.5);
        CHECK(red.dist.variant() ==
              fpp::WeightDist::two_point(1, 3, 0.5).variant());
    }
    SUBCASE("uniform law picks the smallest admissible threshold") {
        // pmax = 1/(1+v) = 0.5; level fractions give quantiles at
        // 0.5, 0.495, 0.45, 0.25 -> smallest candidate above t0 is 1.25
        fpp::BernoulliReduction red =
            fpp::bernoulli_reduction(fpp::WeightDist::uniform(1, 2), 1.0);
        CHECK_FALSE(red.degenerate);
        CHECK(red.threshold == 1.25);
        CHECK(red.p_lo == 0.25);
        CHECK(red.dist.variant() ==
              fpp::WeightDist::two_point(1, 1.25, 0.25).variant());
    }
    SUBCASE("coupled weight map") {
        fpp::BernoulliReduction red =
            fpp::bernoulli_reduction(fpp::WeightDist::uniform(1, 2), 1.0);
        CHECK(fpp::bernoulli_reduce_weight(red, 1.2) == 1.0);
        CHECK(fpp::bernoulli_reduce_weight(red, 1.25) == 1.25);
        CHECK(fpp::bernoulli_reduce_weight(red, 1.9) == 1.25);
    }
    SUBCASE("degenerate cases") {
        CHECK_THROWS_AS(fpp::bernoulli_reduction(fpp::WeightDist::dirac(1), 1.0),
                        fpp::domain_error);
        CHECK_THROWS_AS(
            fpp::bernoulli_reduction(fpp::WeightDist::two_point(1, 3, 0.5), -0.5),
            fpp::domain_error);
    }
}

TEST_CASE("spec strings parse and round-trip") {
    auto round_trip = [](const fpp::WeightDist& d) {
        fpp::WeightDist back = fpp::parse_dist_spec(d.spec_string());
        CHECK(back.variant() == d.variant());
        CHECK(back.cap() == d.cap());
    };
    round_trip(fpp::WeightDist::dirac(1));
    round_trip(fpp::WeightDist::two_point(1, 3, 0.5));
    round_trip(fpp::WeightDist::uniform(0.1, 2.25));
    round_trip(fpp::WeightDist::exponential(0.125));
    round_trip(fpp::truncate(fpp::WeightDist::exponential(1), 2.5));

    CHECK(fpp::parse_dist_spec("dirac:1").variant() ==
          fpp::WeightDist::dirac(1).variant());
    CHECK(fpp::parse_dist_spec("twopoint:1,3,0.5").variant() ==
          fpp::WeightDist::two_point(1, 3, 0.5).variant());
    CHECK(fpp::parse_dist_spec("uniform:0,1").variant() ==
          fpp::WeightDist::uniform(0, 1).variant());
    CHECK(fpp::parse_dist_spec("exp:2").variant() ==
          fpp::WeightDist::exponential(2).variant());

    CHECK_THROWS_AS(fpp::parse_dist_spec("gauss:0,1"), fpp::config_error);
    CHECK_THROWS_AS(fpp::parse_dist_spec("twopoint:1,3"), fpp::config_error);
    CHECK_THROWS_AS(fpp::parse_dist_spec("twopoint:1,3,0.5,9"), fpp::config_error);
    CHECK_THROWS_AS(fpp::parse_dist_spec("dirac:x"), fpp::config_error);
    CHECK_THROWS_AS(fpp::parse_dist_spec(""), fpp::config_error);
}

TEST_CASE("empirical csv loading") {
    const std::string path = "test_empirical_tmp.csv";
    {
        std::ofstream f(path);
        f << "value,prob\n";
        f << "# comment line\n";
        f << "2,0.25\n";
        f << "1,0.25\n\n";
        f << "4,0.5\n";
    }
    fpp::WeightDist d = fpp::parse_dist_spec("empirical:" + path);
    CHECK(d.variant() ==
          fpp::WeightDist::empirical({1, 2, 4}, {0.25, 0.25, 0.5}).variant());
    {
        std::ofstream f(path);
        f << "1,0.5\n1,0.5\n";  // duplicate values
    }
    CHECK_THROWS_AS(fpp::parse_dist_spec("empirical:" + path), fpp::config_error);
    CHECK_THROWS_AS(fpp::parse_dist_spec("empirical:no_such_file.csv"),
                    fpp::config_error);
    std::remove(path.c_str());
}

TEST_SUITE_END();
