#include "doctest.h"

#include <cmath>

#include "normlab/construction.hpp"
#include "normlab/errors.hpp"

using namespace normlab;

TEST_CASE("constructed exponent schedules") {
    const auto s3 = construct_exponents(3.0);
    CHECK(s3.offset == 3);
    CHECK(s3.exponent(1) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(s3.exponent(2) == doctest::Approx(2.4).epsilon(1e-15));
    CHECK(s3.threshold(1) == doctest::Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-15));

    const auto s4 = construct_exponents(4.0);
    CHECK(s4.offset == 2);
    CHECK(s4.exponent(1) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));

    CHECK(construct_exponents(2.5).offset == 5);

    CHECK_THROWS_AS(construct_exponents(2.0), input_error);
    CHECK_THROWS_AS(construct_exponents(1.5), input_error);
}

TEST_CASE("exponents stay strictly inside (2, p) and increase") {
    for (const double p : {2.5, 3.0, 4.0, 7.3}) {
        const auto s = construct_exponents(p);
        double prev = 2.0;
        for (std::uint32_t i = 1; i <= 1000; ++i) {
            const double pi = s.exponent(i);
            CHECK(pi > 2.0);
            CHECK(pi < p);
            CHECK(pi > prev);
            prev = pi;
        }
    }
}

TEST_CASE("constructed schedules feed space validation") {
    for (const double p : {2.5, 3.0, 4.0, 10.0}) CHECK_NOTHROW(make_modular_space(p));
}

TEST_CASE("criterion passes with K = 3, tight at the thresholds") {
    for (const double p : {2.5, 3.0, 4.0}) {
        const auto params = IsoCriterionParams::for_construction(p);
        const auto rep = check_iso_criterion(params, 50);
        CHECK(rep.pass);
        // the upper bound is an equality at t = t_i by construction
        CHECK(std::abs(rep.a_min_slack) <= 1e-12);
        CHECK(rep.a_grid_min_slack >= -1e-9);
    }
}

TEST_CASE("criterion fails at every index with K = 1") {
    const auto params = IsoCriterionParams::for_construction(3.0, 1.0);
    const auto rep = check_iso_criterion(params, 20);
    CHECK(!rep.pass);
    // M_i(t_i)/N_i(t_i) = 3, so the slack misses by 2
    CHECK(rep.a_min_slack == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("condition (b) is an exact geometric series") {
    const auto params = IsoCriterionParams::for_construction(3.0);
    const auto rep = check_iso_criterion(params, 10);
    CHECK(rep.b_partial_sum == doctest::Approx(0.125 - std::pow(2.0, -13.0)).epsilon(1e-15));
    CHECK(rep.b_tail_bound == doctest::Approx(std::pow(2.0, -13.0)).epsilon(1e-15));
    CHECK(rep.b_partial_sum + rep.b_tail_bound == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("verdict is stable in the index budget") {
    const auto params = IsoCriterionParams::for_construction(3.0);
    const auto small = check_iso_criterion(params, 10);
    const auto large = check_iso_criterion(params, 1000);
    CHECK(small.pass == large.pass);
    CHECK(std::abs(small.a_min_slack - large.a_min_slack) <= 1e-12);
    CHECK(small.b_partial_sum + small.b_tail_bound ==
          doctest::Approx(large.b_partial_sum + large.b_tail_bound).epsilon(1e-14));
}

TEST_CASE("criterion input validation") {
    const auto params = IsoCriterionParams::for_construction(3.0);
    CHECK_THROWS_AS(check_iso_criterion(params, 0), input_error);

    auto bad = params;
    bad.base = ModularFamily::orlicz_pr(1.5, 1.75);
    CHECK_THROWS_AS(check_iso_criterion(bad, 10), input_error);
}
