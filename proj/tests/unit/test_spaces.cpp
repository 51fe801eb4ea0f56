#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/spaces.hpp"
#include "test_oracles.hpp"

using namespace normlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FiniteVector dense(std::initializer_list<double> values) {
    return FiniteVector::from_dense(std::vector<double>(values));
}

FiniteVector random_vector(std::mt19937_64& rng, int max_dim = 32, double amp = 10.0) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_real_distribution<double> val(-amp, amp);
    std::vector<double> v(dim(rng));
    for (auto& x : v) x = val(rng);
    return FiniteVector::from_dense(v);
}

}  // namespace

TEST_CASE("family construction enforces exponent constraints") {
    CHECK_NOTHROW(ModularFamily::pure_power(1.0));
    CHECK_THROWS_AS(ModularFamily::pure_power(0.5), input_error);
    CHECK_THROWS_AS(ModularFamily::pure_power(kInf), input_error);

    CHECK_NOTHROW(ModularFamily::orlicz_pr(1.5, 1.75));
    CHECK_THROWS_AS(ModularFamily::orlicz_pr(1.5, 1.5), input_error);   // r must exceed p
    CHECK_THROWS_AS(ModularFamily::orlicz_pr(1.5, 2.0), input_error);   // r < 2
    CHECK_THROWS_AS(ModularFamily::orlicz_pr(1.0, 1.5), input_error);   // p > 1
    CHECK_THROWS_AS(ModularFamily::orlicz_pr(1.75, 1.5), input_error);

    CHECK_NOTHROW(ModularFamily::modular_ppi(3.0, 3));
    CHECK_THROWS_AS(ModularFamily::modular_ppi(2.0, 3), input_error);
    CHECK_THROWS_AS(ModularFamily::modular_ppi(3.0, 0), input_error);
    // offset too small: p_1 = 2.2/2 * ... not > 2
    CHECK_THROWS_AS(ModularFamily::modular_ppi(2.2, 1), input_error);

    CHECK_THROWS_AS(SpaceSpec::lp(0.5), input_error);
    CHECK_NOTHROW(SpaceSpec::lp(kInf));
}

TEST_CASE("family eval matches the parametric formulas") {
    const auto pure = ModularFamily::pure_power(2.0);
    const auto orl = ModularFamily::orlicz_pr(1.5, 1.75);
    const auto mod = ModularFamily::modular_ppi(3.0, 3);

    CHECK(pure.eval(1, 0.0) == 0.0);
    CHECK(orl.eval(5, 0.0) == 0.0);
    CHECK(mod.eval(2, 0.0) == 0.0);

    CHECK(pure.eval(4, 3.0) == doctest::Approx(9.0));
    CHECK(orl.eval(1, 1.0) == doctest::Approx(2.0));
    CHECK(mod.exponent(1) == doctest::Approx(2.25));
    CHECK(mod.exponent(2) == doctest::Approx(2.4));
    CHECK(mod.eval(1, 1.0) == doctest::Approx(2.0));

    // strictly increasing and convex, spot-checked by finite differences
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pt(0.01, 4.0);
    for (const auto& fam : {pure, orl, mod}) {
        for (int trial = 0; trial < 200; ++trial) {
            double a = pt(rng), b = pt(rng), c = pt(rng);
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            if (c - a < 1e-6) continue;
            const std::uint32_t i = 1 + trial % 8;
            CHECK(fam.eval(i, a) <= fam.eval(i, b));
            CHECK(fam.eval(i, b) <= fam.eval(i, c));
            // chord above graph at the interior point
            const double t = (b - a) / (c - a);
            const double chord = (1.0 - t) * fam.eval(i, a) + t * fam.eval(i, c);
            CHECK(fam.eval(i, b) <= chord + 1e-12 * (1.0 + chord));
        }
    }
}

TEST_CASE("modular_sum examples") {
    const auto l2 = SpaceSpec::lp(2.0);
    const auto orl = SpaceSpec::orlicz(1.5, 1.75);

    CHECK(modular_sum(l2, dense({3, 4}), 5.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(modular_sum(orl, FiniteVector{}, 1.0) == 0.0);
    CHECK(modular_sum(orl, FiniteVector::unit(1), 1.0) == doctest::Approx(2.0));

    CHECK_THROWS_AS(modular_sum(l2, dense({1}), 0.0), input_error);
    CHECK_THROWS_AS(modular_sum(l2, dense({1}), -1.0), input_error);
    CHECK_THROWS_AS(modular_sum(SpaceSpec::lp(kInf), dense({1}), 1.0), input_error);
}

TEST_CASE("luxemburg norm examples and scalar oracle") {
    const auto l2 = SpaceSpec::lp(2.0);
    CHECK(luxemburg_norm(l2, dense({3, 4})) == doctest::Approx(5.0).epsilon(1e-11));
    CHECK(luxemburg_norm(l2, FiniteVector{}) == 0.0);

    const auto orl = SpaceSpec::orlicz(1.5, 1.75);
    // rho with rho^-1.5 + rho^-1.75 = 1, by independent bisection
    const double expected = oracle::bisect(
        [](double rho) { return std::pow(rho, -1.5) + std::pow(rho, -1.75) - 1.0; }, 1.0, 4.0);
    CHECK(expected == doctest::Approx(1.533311908191104).epsilon(1e-12));
    CHECK(luxemburg_norm(orl, FiniteVector::unit(1)) == doctest::Approx(expected).epsilon(1e-10));

    // homogeneity on a fixed vector
    const auto y = dense({0.3, -1.2, 0.0, 2.5});
    CHECK(luxemburg_norm(orl, 2.0 * y) ==
          doctest::Approx(2.0 * luxemburg_norm(orl, y)).epsilon(1e-10));

    // dense-span entry point agrees with the sparse one
    const std::vector<double> raw{0.3, -1.2, 0.0, 2.5};
    CHECK(luxemburg_norm(orl, std::span<const double>(raw)) ==
          luxemburg_norm(orl, dense({0.3, -1.2, 0.0, 2.5})));
}

TEST_CASE("lp norm closed forms") {
    CHECK(lp_norm(1.5, FiniteVector::unit(1) + FiniteVector::unit(2)) ==
          doctest::Approx(std::pow(2.0, 1.0 / 1.5)).epsilon(1e-14));
    CHECK(lp_norm(kInf, dense({1, -2})) == 2.0);
    CHECK(lp_norm(3.0, dense({1, 1, 1})) == doctest::Approx(std::cbrt(3.0)).epsilon(1e-14));
    CHECK(lp_norm(2.0, FiniteVector{}) == 0.0);
    CHECK_THROWS_AS(lp_norm(0.99, dense({1})), input_error);

    // huge exponent must not overflow thanks to max factoring
    CHECK(lp_norm(600.0, dense({2, 2})) == doctest::Approx(2.0 * std::pow(2.0, 1.0 / 600.0)));
}

TEST_CASE("conjugate index") {
    CHECK(conjugate_index(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_index(1.5) == doctest::Approx(3.0));
    CHECK(conjugate_index(4.0) == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS(conjugate_index(1.0), input_error);
    CHECK_THROWS_AS(conjugate_index(kInf), input_error);
    CHECK_THROWS_AS(conjugate_index(std::nan("")), input_error);
}

TEST_CASE("distance basics") {
    const auto lp15 = SpaceSpec::lp(1.5);
    const auto e1 = FiniteVector::unit(1);
    const auto e2 = FiniteVector::unit(2);
    CHECK(distance(lp15, e1, e2) == doctest::Approx(std::pow(2.0, 1.0 / 1.5)).epsilon(1e-11));
    CHECK(distance(lp15, e1, -e1) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(distance(lp15, e1, e1) == 0.0);
}

TEST_CASE("pure power luxemburg norm equals closed-form lp norm") {
    std::mt19937_64 rng(2024);
    for (const double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
        const auto space = SpaceSpec::lp(p);
        for (int trial = 0; trial < 500; ++trial) {
            const auto x = random_vector(rng);
            const double closed = lp_norm(p, x);
            const double lux = luxemburg_norm(space, x);
            CHECK(std::abs(lux - closed) <= 1e-10 * closed);
        }
    }
}

TEST_CASE("norm axioms hold across the three families") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> scale(-4.0, 4.0);
    const std::vector<SpaceSpec> spaces{SpaceSpec::lp(1.5), SpaceSpec::orlicz(1.5, 1.75),
                                        SpaceSpec::modular(3.0, 3)};
    for (const auto& space : spaces) {
        for (int trial = 0; trial < 300; ++trial) {
            const auto x = random_vector(rng, 16);
            const auto y = random_vector(rng, 16);
            const double nx = luxemburg_norm(space, x);
            const double ny = luxemburg_norm(space, y);

            CHECK(nx > 0.0);  // random vectors are nonzero
            const double lambda = scale(rng);
            CHECK(std::abs(luxemburg_norm(space, lambda * x) - std::abs(lambda) * nx) <=
                  1e-9 * (1.0 + std::abs(lambda) * nx));
            CHECK(luxemburg_norm(space, x + y) <= nx + ny + 1e-9 * (nx + ny));

            // fixed point: the norm is the unit-modular level
            CHECK(std::abs(modular_sum(space, x, nx) - 1.0) <= 1e-9);

            // monotonicity of the modular in rho
            const double rho1 = 0.5 * nx, rho2 = 1.5 * nx;
            CHECK(modular_sum(space, x, rho1) > modular_sum(space, x, rho2));
        }
        CHECK(luxemburg_norm(space, FiniteVector{}) == 0.0);
    }
}

TEST_CASE("orlicz unit sphere identity") {
    // ||x||_M = 1 implies ||x||_p^p + ||x||_r^r = 1
    std::mt19937_64 rng(77);
    const auto orl = SpaceSpec::orlicz(1.5, 1.75);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = random_vector(rng, 16);
        const auto xin = (1.0 / luxemburg_norm(orl, x)) * x;
        const double lhs = std::pow(lp_norm(1.5, xin), 1.5) + std::pow(lp_norm(1.75, xin), 1.75);
        CHECK(std::abs(lhs - 1.0) <= 1e-9);
    }
}

TEST_CASE("sup norm space") {
    const auto linf = SpaceSpec::lp(kInf);
    CHECK(linf.is_sup());
    CHECK(luxemburg_norm(linf, dense({1, -2, 0.5})) == 2.0);
    CHECK(distance(linf, FiniteVector::unit(1), -FiniteVector::unit(1)) == 2.0);
    CHECK_THROWS_AS(linf.family(), input_error);
}
