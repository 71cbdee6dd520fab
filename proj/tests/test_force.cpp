#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bforge/force.hpp"
#include "oracles.hpp"

using namespace bforge;
using Catch::Approx;

TEST_CASE("cubic force evaluation", "[force]") {
    const TargetForce f = DuffingForce{-5000.0};
    CHECK(eval_force(f, 0.0) == 0.0);
    CHECK(eval_force(f, 0.02) == Approx(-0.04).epsilon(1e-12));
}

TEST_CASE("linear polynomial force", "[force]") {
    const TargetForce f = PolynomialForce{{0.0, 100.0}};
    CHECK(eval_force(f, 0.01) == Approx(1.0).epsilon(1e-15));
    CHECK(potential(f, 0.01) == Approx(5.0e-3).epsilon(1e-15));
}

TEST_CASE("potential of the cubic force", "[force]") {
    const TargetForce f = DuffingForce{-5000.0};
    CHECK(potential(f, 0.0) == 0.0);
    CHECK(potential(f, 0.02) == Approx(-2.0e-4).epsilon(1e-12));
}

TEST_CASE("potential is zero at the origin for every kind", "[force]") {
    CHECK(potential(PolynomialForce{{3.0, -2.0, 7.0}}, 0.0) == 0.0);
    CHECK(potential(DuffingForce{123.0}, 0.0) == 0.0);
    const auto tab = TabulatedForce({-1.0, -0.25, 0.5, 1.0}, {2.0, -1.0, 0.5, 3.0});
    CHECK(potential(TargetForce{tab}, 0.0) == 0.0);
}

TEST_CASE("polynomial potential differentiates back to the force", "[force]") {
    std::mt19937 rng(8201);
    std::uniform_real_distribution<double> xdist(-0.5, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        const TargetForce f = PolynomialForce{oracle::random_polynomial(rng, 5, 10.0)};
        for (int i = 0; i < 10; ++i) {
            const double x = xdist(rng);
            const double fd = oracle::fd_derivative(
                [&](double xx) { return potential(f, xx); }, x, 1e-7);
            const double p = eval_force(f, x);
            CHECK(std::abs(fd - p) / std::max(1.0, std::abs(p)) < 1e-5);
        }
    }
}

TEST_CASE("odd forces have even potentials", "[force]") {
    std::mt19937 rng(8202);
    std::uniform_real_distribution<double> coef(-100.0, 100.0);
    std::uniform_real_distribution<double> xdist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const TargetForce f = PolynomialForce{{0.0, coef(rng), 0.0, coef(rng), 0.0, coef(rng)}};
        const double x = xdist(rng);
        CHECK(potential(f, -x) == potential(f, x));
    }
}

TEST_CASE("cubic kind is the cubic polynomial", "[force]") {
    std::mt19937 rng(8203);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0);
    const double k3 = -5000.0;
    const TargetForce duffing = DuffingForce{k3};
    const TargetForce poly = PolynomialForce{{0.0, 0.0, 0.0, k3}};
    for (int i = 0; i < 100; ++i) {
        const double x = xdist(rng);
        CHECK(eval_force(duffing, x) == eval_force(poly, x));
        CHECK(potential(duffing, x) == potential(poly, x));
    }
}

TEST_CASE("tabulated force interpolates and integrates consistently", "[force]") {
    // Dense table of P = 100*x; trapezoid is exact for the interpolant.
    std::vector<double> xs, ps;
    for (int i = 0; i <= 40; ++i) {
        const double x = -0.2 + 0.01 * i;
        xs.push_back(x);
        ps.push_back(100.0 * x);
    }
    const TargetForce f = TabulatedForce(xs, ps);
    CHECK(eval_force(f, 0.05) == Approx(5.0).epsilon(1e-12));
    CHECK(eval_force(f, 0.123) == Approx(12.3).epsilon(1e-12));
    CHECK(potential(f, 0.1) == Approx(0.5).epsilon(1e-10));
    CHECK(potential(f, -0.1) == Approx(0.5).epsilon(1e-10));

    // The integral's derivative is the interpolant, including mid-segment.
    const double fd = oracle::fd_derivative([&](double x) { return potential(f, x); },
                                            0.0634, 1e-8);
    CHECK(fd == Approx(eval_force(f, 0.0634)).epsilon(1e-6));
}

TEST_CASE("tabulated force rejects out-of-range evaluation", "[force]") {
    const TargetForce f = TabulatedForce({-0.1, 0.0, 0.1}, {1.0, 0.0, -1.0});
    CHECK_THROWS_AS(eval_force(f, 0.11), RangeError);
    CHECK_THROWS_AS(eval_force(f, -0.2), RangeError);
    CHECK_THROWS_AS(potential(f, 0.2), RangeError);
    CHECK_NOTHROW(eval_force(f, 0.1));
    CHECK_NOTHROW(eval_force(f, -0.1));
}

TEST_CASE("tabulated construction enforces its invariants", "[force]") {
    CHECK_THROWS_AS(TabulatedForce({0.0}, {1.0}), InvalidSpec);
    CHECK_THROWS_AS(TabulatedForce({0.0, 0.0}, {1.0, 2.0}), InvalidSpec);
    CHECK_THROWS_AS(TabulatedForce({0.2, 0.1}, {1.0, 2.0}), InvalidSpec);
    CHECK_THROWS_AS(TabulatedForce({0.1, 0.2}, {1.0, 2.0}), InvalidSpec);  // misses x = 0
    CHECK_NOTHROW(TabulatedForce({-0.1, 0.2}, {1.0, 2.0}));
}

TEST_CASE("potential sign classification", "[force]") {
    CHECK(classify_potential(DuffingForce{-5000.0}, -0.1, 0.1) == PotentialClass::NonPositive);
    CHECK(classify_potential(DuffingForce{5000.0}, -0.1, 0.1) == PotentialClass::NonNegative);
    CHECK(classify_potential(PolynomialForce{{0.0, 0.0, 50.0}}, -0.1, 0.1) ==
          PotentialClass::SignChanging);
    CHECK(classify_potential(PolynomialForce{{}}, -0.1, 0.1) == PotentialClass::IdenticallyZero);
    CHECK(classify_potential(PolynomialForce{{0.0}}, -0.1, 0.1) ==
          PotentialClass::IdenticallyZero);
}

TEST_CASE("classification preconditions", "[force]") {
    CHECK_THROWS_AS(classify_potential(DuffingForce{1.0}, -0.1, 0.1, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(classify_potential(DuffingForce{1.0}, 0.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(classify_potential(DuffingForce{1.0}, 0.2, 0.1), std::invalid_argument);
}
