#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bforge/glsm.hpp"
#include "oracles.hpp"

using namespace bforge;
using Catch::Approx;

namespace {

GlsmParams demo_params() {
    return GlsmParams{100.0, 30.0, 0.1, 0.02, 0.05};
}

}  // namespace

TEST_CASE("force vanishes at the equilibrium position", "[glsm]") {
    CHECK(glsm_force(demo_params(), 0.0) == 0.0);
    CHECK(glsm_force(GlsmParams{5.0, 2.0, 0.3, 0.01, 0.0}, 0.0) == 0.0);
}

TEST_CASE("zero effective stiffness gives zero force when B = 0", "[glsm]") {
    const GlsmParams p{100.0, 50.0, 0.1, 0.0, 0.0};
    CHECK(glsm_force(p, 0.03) == Approx(0.0).margin(1e-15));
}

TEST_CASE("force at a reference point", "[glsm]") {
    // K1*Y - 2*K2*(1 - B/sqrt(L^2-Y^2))*Y at (100, 30, B=0.02, L=0.1, y=0.05),
    // evaluated with 40-digit arithmetic.
    CHECK(glsm_force(demo_params(), 0.05) == Approx(2.6928203230275509).epsilon(1e-14));
}

TEST_CASE("for B = 0 the model is exactly linear", "[glsm]") {
    std::mt19937 rng(7101);
    std::uniform_real_distribution<double> stiff(0.0, 500.0);
    std::uniform_real_distribution<double> frac(-0.99, 0.99);
    for (int i = 0; i < 50; ++i) {
        GlsmParams p{stiff(rng), stiff(rng), 0.2, 0.0, 0.0};
        const double y = frac(rng) * p.rod_length;
        CHECK(glsm_force(p, y) == Approx(effective_stiffness(p) * y).margin(1e-12));
    }
}

TEST_CASE("force is odd in the displacement", "[glsm]") {
    std::mt19937 rng(7102);
    std::uniform_real_distribution<double> stiff(0.0, 500.0);
    std::uniform_real_distribution<double> gap(0.0, 0.05);
    std::uniform_real_distribution<double> frac(0.0, 0.99);
    for (int i = 0; i < 50; ++i) {
        GlsmParams p{stiff(rng), stiff(rng), 0.15, gap(rng), 0.0};
        const double y = frac(rng) * p.rod_length;
        CHECK(glsm_force(p, -y) == Approx(-glsm_force(p, y)).margin(1e-12));
    }
}

TEST_CASE("stiffness equals the B = 0 constant everywhere when B = 0", "[glsm]") {
    const GlsmParams p{100.0, 30.0, 0.1, 0.0, 0.0};
    CHECK(glsm_stiffness(p, 0.0) == 40.0);
    CHECK(glsm_stiffness(p, 0.07) == 40.0);
    CHECK(glsm_stiffness(p, -0.09) == 40.0);
}

TEST_CASE("stiffness diverges toward the lock for B > 0", "[glsm]") {
    const GlsmParams p = demo_params();
    const double near_lock = glsm_stiffness(p, 0.0999);
    CHECK(near_lock > 1e4);
    CHECK(glsm_stiffness(p, 0.0999999) > near_lock);
}

TEST_CASE("stiffness matches a finite difference of the force", "[glsm]") {
    std::mt19937 rng(7103);
    std::uniform_real_distribution<double> stiff(0.0, 500.0);
    std::uniform_real_distribution<double> gap(0.0, 0.05);
    std::uniform_real_distribution<double> frac(-0.9, 0.9);
    for (int i = 0; i < 100; ++i) {
        GlsmParams p{stiff(rng), stiff(rng), 0.1, gap(rng), 0.0};
        const double y = frac(rng) * p.rod_length;
        const double fd = oracle::fd_derivative(
            [&](double yy) { return glsm_force(p, yy); }, y, 1e-7 * p.rod_length);
        const double k = glsm_stiffness(p, y);
        const double scale = std::max(1.0, std::abs(k));
        CHECK(std::abs(k - fd) / scale < 1e-4);
    }
}

TEST_CASE("stiffness never drops below the effective stiffness", "[glsm]") {
    std::mt19937 rng(7104);
    std::uniform_real_distribution<double> stiff(0.0, 500.0);
    std::uniform_real_distribution<double> gap(0.0, 0.05);
    std::uniform_real_distribution<double> frac(-0.99, 0.99);
    for (int i = 0; i < 100; ++i) {
        GlsmParams p{stiff(rng), stiff(rng), 0.1, gap(rng), 0.0};
        const double y = frac(rng) * p.rod_length;
        CHECK(glsm_stiffness(p, y) >= effective_stiffness(p) - 1e-12);
    }
}

TEST_CASE("effective stiffness and its classification", "[glsm]") {
    CHECK(effective_stiffness(GlsmParams{100.0, 0.0, 0.1, 0.0, 0.0}) == 100.0);
    CHECK(effective_stiffness(GlsmParams{100.0, 100.0, 0.1, 0.0, 0.0}) == -100.0);
    CHECK(effective_stiffness(GlsmParams{80.0, 40.0, 0.1, 0.0, 0.0}) == 0.0);

    CHECK(classify_stiffness(GlsmParams{100.0, 30.0, 0.1, 0.0, 0.0}) == StiffnessClass::Positive);
    CHECK(classify_stiffness(GlsmParams{100.0, 100.0, 0.1, 0.0, 0.0}) == StiffnessClass::Negative);
    CHECK(classify_stiffness(GlsmParams{80.0, 40.0, 0.1, 0.0, 0.0}) == StiffnessClass::Zero);
}

TEST_CASE("evaluation at or beyond the lock is rejected", "[glsm]") {
    const GlsmParams p = demo_params();
    CHECK_THROWS_AS(glsm_force(p, p.rod_length), DomainError);
    CHECK_THROWS_AS(glsm_force(p, -p.rod_length), DomainError);
    CHECK_THROWS_AS(glsm_force(p, 1.5 * p.rod_length), DomainError);
    CHECK_THROWS_AS(glsm_stiffness(p, p.rod_length), DomainError);
    CHECK_NOTHROW(glsm_force(p, 0.9999 * p.rod_length));
}

TEST_CASE("parameter validation", "[glsm]") {
    CHECK_THROWS_AS(validate(GlsmParams{-1.0, 0.0, 0.1, 0.0, 0.0}), InvalidSpec);
    CHECK_THROWS_AS(validate(GlsmParams{1.0, -2.0, 0.1, 0.0, 0.0}), InvalidSpec);
    CHECK_THROWS_AS(validate(GlsmParams{1.0, 2.0, 0.0, 0.0, 0.0}), InvalidSpec);
    CHECK_THROWS_AS(validate(GlsmParams{1.0, 2.0, 0.1, -0.01, 0.0}), InvalidSpec);
    CHECK_NOTHROW(validate(demo_params()));
}
