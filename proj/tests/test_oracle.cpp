#include "l0cert/errors.hpp"
#include "l0cert/generators.hpp"
#include "l0cert/oracle.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace l0cert;

TEST_CASE("free covariates pick the smallest full fit") {
    std::mt19937_64 rng(1);
    const auto r = ref::random_instance(rng, 9, 5, 2, 1.0, 0.5);
    const ProblemInstance inst(r.phi, r.y);
    const auto o = brute_force_p0(inst, 0.0);
    const double full = rss(inst, restricted_least_squares(inst, Support::full(5)));
    CHECK(std::abs(o.best_objective - full) <= 1e-10);
    CHECK(o.best_support.size() == 5);
}

TEST_CASE("large penalty selects nothing") {
    std::mt19937_64 rng(2);
    const auto r = ref::random_instance(rng, 9, 5, 2, 1.0, 0.5);
    const ProblemInstance inst(r.phi, r.y);
    const auto o = brute_force_p0(inst, r.y.squaredNorm() * 1.01);
    CHECK(o.best_support.empty());
    CHECK(o.best_objective == doctest::Approx(r.y.squaredNorm()));
}

TEST_CASE("extreme example optimum") {
    const auto inst = make_extreme({8, 3, {0.9, 0.8, 0.7, 0.65, 0.6}});
    const auto o = brute_force_p0(inst, 0.05);
    CHECK(o.best_support == Support({5, 6, 7}, 8));
    const auto range = lambda0_optimality_range(o, inst, o.best_support);
    REQUIRE(range.has_value());
    CHECK(range->contains(0.05));
    // Upper end set by the best single column: (1 - a_1^2) / 2.
    CHECK(range->hi == doctest::Approx((1.0 - 0.81) / 2.0).epsilon(1e-12));
}

TEST_CASE("optimality interval on a two-column orthonormal toy") {
    const auto inst = make_orthonormal({5, 2, {3, 1}, 3});
    const auto range = lambda0_optimality_range(inst, Support({0}, 2));
    REQUIRE(range.has_value());
    CHECK(std::abs(range->lo - 1.0) <= 1e-10);
    CHECK(std::abs(range->hi - 9.0) <= 1e-10);
    CHECK_FALSE(lambda0_optimality_range(inst, Support({1}, 2)).has_value());
}

TEST_CASE("oracle invariants against the reference enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto r = ref::random_instance(rng, 10, 6, 2, 1.0, 0.4, trial % 2 ? 0.5 : 0.0);
        const ProblemInstance inst(r.phi, r.y);
        const double lambda0 = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const auto o = brute_force_p0(inst, lambda0);
        const auto best = ref::best_subsets(r.phi, r.y);
        double expect = 1e300;
        for (int c = 0; c <= 6; ++c) {
            expect = std::min(expect, best.rss[static_cast<std::size_t>(c)] + lambda0 * c);
            if (c > 0) CHECK(o.f_curve[static_cast<std::size_t>(c)] <= o.f_curve[static_cast<std::size_t>(c - 1)]);
        }
        CHECK(std::abs(o.best_objective - expect) <= 1e-9);
        CHECK(std::abs(o.best_objective - p0_objective(inst, o.best_x, lambda0)) <= 1e-12);
        CHECK(o.is_optimal(o.best_support));

        if (const auto range = lambda0_optimality_range(o, inst, o.best_support)) {
            const double hi = std::isfinite(range->hi) ? range->hi : range->lo + 1.0;
            for (double t : {0.25, 0.5, 0.75}) {
                const double l = range->lo + t * (hi - range->lo);
                CHECK(brute_force_p0(inst, l).is_optimal(o.best_support));
            }
        }
    }
}

TEST_CASE("cap") {
    const auto inst = make_orthonormal({30, 30, std::vector<double>(30, 1.0), 1});
    CHECK_THROWS_AS(brute_force_p0(inst, 0.1, std::nullopt, EnumerationLimits{}), TooLarge);
}
