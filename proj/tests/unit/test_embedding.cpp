#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "normlab/embedding.hpp"
#include "normlab/errors.hpp"
#include "test_oracles.hpp"

using namespace normlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DistanceMatrix euclidean_metric(const std::vector<std::vector<double>>& pts) {
    DistanceMatrix D(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                const double d = pts[i][k] - pts[j][k];
                s += d * d;
            }
            D.set(i, j, std::sqrt(s));
        }
    }
    return D;
}

}  // namespace

TEST_CASE("distance matrix validation") {
    DistanceMatrix D(3);
    D.set(0, 1, 1.0);
    D.set(0, 2, 1.0);
    D.set(1, 2, 3.0);  // violates the triangle inequality
    CHECK_THROWS_AS(D.validate(), input_error);

    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0.0, -1.0}, {-1.0, 0.0}}), input_error);
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{0.0, 1.0}, {2.0, 0.0}}), input_error);
    CHECK_THROWS_AS(DistanceMatrix::from_rows({{1.0}}), input_error);
    CHECK_NOTHROW(DistanceMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
}

TEST_CASE("config_U reproduces the exact l_p geometry") {
    const double p = 1.5;
    const auto [config, D] = config_U(p);
    CHECK(config.points.size() == 5);
    CHECK(config.gauge == 4);
    CHECK(config.points[4].is_zero());

    const double cross = std::pow(2.0, 1.0 / p);
    CHECK(D(0, 4) == doctest::Approx(1.0).epsilon(1e-15));   // d(e1, 0)
    CHECK(D(1, 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(D(0, 1) == doctest::Approx(cross).epsilon(1e-15));  // d(e1, e2)
    CHECK(D(0, 3) == doctest::Approx(cross).epsilon(1e-15));  // d(e1, -e2)
    CHECK(D(0, 2) == doctest::Approx(2.0).epsilon(1e-15));    // d(e1, -e1)
    CHECK(D(1, 3) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_NOTHROW(D.validate());

    CHECK_THROWS_AS(config_U(1.0), input_error);
    CHECK_THROWS_AS(config_U(2.0), input_error);
    CHECK_THROWS_AS(config_U(2.5), input_error);
}

TEST_CASE("config_V reproduces the exact l_p geometry") {
    const double p = 3.0;
    const auto [config, D] = config_V(p);
    CHECK(config.gauge == 4);

    const double cross = std::pow(2.0, 1.0 - 1.0 / p);
    for (int i = 0; i < 4; ++i) CHECK(D(i, 4) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(D(0, 1) == doctest::Approx(cross).epsilon(1e-13));
    CHECK(D(0, 3) == doctest::Approx(cross).epsilon(1e-13));
    CHECK(D(1, 2) == doctest::Approx(cross).epsilon(1e-13));
    CHECK(D(0, 2) == doctest::Approx(2.0).epsilon(1e-13));  // antipodal
    CHECK(D(1, 3) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_NOTHROW(D.validate());

    CHECK_THROWS_AS(config_V(2.0), input_error);
    CHECK_THROWS_AS(config_V(1.5), input_error);
}

TEST_CASE("frechet embedding is exact") {
    SUBCASE("two points") {
        const auto D = DistanceMatrix::from_rows({{0.0, 3.7}, {3.7, 0.0}});
        const auto config = frechet_embed(D);
        CHECK(config.points[0].is_zero());
        CHECK(distance(config.space, config.points[0], config.points[1]) ==
              doctest::Approx(3.7).epsilon(1e-15));
    }

    SUBCASE("the U set") {
        const auto [ignored, D] = config_U(1.5);
        const auto image = frechet_embed(D);
        CHECK(distortion(image, D) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("random euclidean point sets") {
        std::mt19937_64 rng(55);
        std::uniform_real_distribution<double> val(-3.0, 3.0);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<double>> pts(6, std::vector<double>(4));
            for (auto& pt : pts)
                for (auto& x : pt) x = val(rng);
            const auto D = euclidean_metric(pts);
            const auto image = frechet_embed(D);
            CHECK(distortion(image, D) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("distortion definition") {
    const auto [config, D] = config_U(1.5);

    CHECK(distortion(config, D) == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("uniform scaling is distortion-free") {
        PointConfig scaled = config;
        for (auto& pt : scaled.points) pt = 2.0 * pt;
        CHECK(distortion(scaled, D) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("translation invariance") {
        PointConfig shifted = config;
        const auto t = FiniteVector::from_dense(std::vector<double>{0.3, -0.7, 0.9});
        for (auto& pt : shifted.points) pt = pt + t;
        shifted.gauge = 0;  // gauge no longer at the origin; distortion ignores it
        CHECK(std::abs(distortion(shifted, D) - distortion(config, D)) <= 1e-10);
    }

    SUBCASE("collapsed pairs give infinite distortion") {
        PointConfig collapsed = config;
        collapsed.points[1] = collapsed.points[0];
        CHECK(std::isinf(distortion(collapsed, D)));
    }

    SUBCASE("input validation") {
        PointConfig wrong = config;
        wrong.points.pop_back();
        CHECK_THROWS_AS(distortion(wrong, D), input_error);

        DistanceMatrix zeros(5);
        CHECK_THROWS_AS(distortion(config, zeros), input_error);
    }
}

TEST_CASE("optimizer recovers the exact embedding of U into l_1.5") {
    const auto [config, D] = config_U(1.5);
    OptimizeOptions opts;
    opts.starts = 8;
    opts.seed = 1;
    opts.max_iters = 2400;
    const auto result = optimize_embedding(D, SpaceSpec::lp(1.5), 4, opts);
    CHECK(result.distortion >= 1.0 - 1e-9);  // soundness
    CHECK(result.distortion <= 1.0 + 1e-5);
    CHECK(result.config.points[0].is_zero());
    CHECK(result.starts_used == 8);
}

TEST_CASE("optimizer is deterministic across thread counts") {
    const auto [config, D] = config_U(1.5);
    OptimizeOptions a;
    a.starts = 6;
    a.seed = 42;
    a.max_iters = 600;
    a.threads = 1;
    OptimizeOptions b = a;
    b.threads = 4;
    const auto ra = optimize_embedding(D, SpaceSpec::orlicz(1.5, 1.75), 3, a);
    const auto rb = optimize_embedding(D, SpaceSpec::orlicz(1.5, 1.75), 3, b);
    CHECK(ra.distortion == rb.distortion);
    CHECK(ra.per_pair_ratios == rb.per_pair_ratios);
    for (std::size_t i = 0; i < ra.config.points.size(); ++i)
        CHECK(ra.config.points[i] == rb.config.points[i]);
}

TEST_CASE("residual search: p < 2 branch in dimension 2") {
    const auto space = SpaceSpec::orlicz(1.5, 1.75);
    OptimizeOptions opts;
    opts.starts = 12;
    opts.seed = 7;
    opts.max_iters = 1800;
    const auto result = minimize_isometry_residual(Branch::p_lt_2, space, 2, opts);

    // the best two-coordinate block configuration, by scalar oracle
    const double s = oracle::block_unit_scale(1, 1.5, 1.75);
    const double u = oracle::block_norm(2, s, 1.5, 1.75);
    const double block_residual = std::pow(2.0, 1.0 / 1.5) - u;
    CHECK(block_residual == doctest::Approx(0.051379942063).epsilon(1e-9));

    CHECK(result.max_residual > 0.0);
    CHECK(result.max_residual <= block_residual + 1e-3);  // search reaches the block basin
    CHECK(result.max_residual >= kResidualFloorPlt2);

    // residual-certificate consistency on the reported pair
    const auto cert = obstruction_certificate_p_lt_2(space, result.x, result.y);
    CHECK(cert.defect > 0.0);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(cert.residuals[k] - result.residuals[k]) <= 1e-9);
}

TEST_CASE("residual search: p > 2 branch rejects mismatched spaces") {
    OptimizeOptions opts;
    opts.starts = 1;
    opts.seed = 1;
    CHECK_THROWS_AS(
        minimize_isometry_residual(Branch::p_gt_2, SpaceSpec::orlicz(1.5, 1.75), 2, opts),
        input_error);
    CHECK_THROWS_AS(
        minimize_isometry_residual(Branch::p_lt_2, SpaceSpec::modular(3.0, 3), 2, opts),
        input_error);
    CHECK_THROWS_AS(minimize_isometry_residual(Branch::p_lt_2, SpaceSpec::lp(kInf), 2, opts),
                    input_error);
}

TEST_CASE("gauge invariance of distortion on random configurations") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> pts(5, std::vector<double>(3));
        for (auto& pt : pts)
            for (auto& x : pt) x = val(rng);
        const auto D = euclidean_metric(pts);
        bool positive = true;
        for (std::size_t i = 0; i < 5 && positive; ++i)
            for (std::size_t j = i + 1; j < 5; ++j)
                if (!(D(i, j) > 0.0)) positive = false;
        if (!positive) continue;

        PointConfig config{{}, SpaceSpec::lp(1.5), 0};
        for (const auto& pt : pts) config.points.push_back(FiniteVector::from_dense(pt));
        const double base = distortion(config, D);

        PointConfig moved = config;
        const double lambda = 0.5 + std::abs(val(rng));
        const auto shift = FiniteVector::from_dense(std::vector<double>{val(rng), val(rng)});
        for (auto& pt : moved.points) pt = lambda * pt + shift;
        CHECK(std::abs(distortion(moved, D) - base) <= 1e-10 * std::max(1.0, base));
    }
}
