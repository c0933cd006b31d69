#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "entropic/potentials.hpp"

using namespace entropic;
using Catch::Approx;

TEST_CASE("quadratic interaction") {
    auto u = InteractionU::quadratic();
    CHECK(u(2.0) == Approx(2.0));
    CHECK(u(-2.0) == Approx(u(2.0))); // even
    CHECK(u.second_deriv(17.0) == 1.0);
    CHECK(u.curvature_range().first == 1.0);
    CHECK(u.curvature_range().second == 1.0);
}

TEST_CASE("perturbed quadratic stays inside the curvature window") {
    auto u = InteractionU::perturbed_quadratic(0.7);
    for (double x : {-30.0, -2.0, -0.3, 0.0, 0.5, 4.0, 100.0}) {
        CHECK(u(x) == Approx(u(-x)));
        CHECK(u.second_deriv(x) >= 1.0);
        CHECK(u.second_deriv(x) <= 1.7 + 1e-12);
    }
    // finite-difference check of the derivatives
    const double h = 1e-5;
    for (double x : {-1.3, 0.2, 2.7}) {
        CHECK(u.deriv(x) == Approx((u(x + h) - u(x - h)) / (2 * h)).epsilon(1e-6));
        CHECK(u.second_deriv(x) ==
              Approx((u.deriv(x + h) - u.deriv(x - h)) / (2 * h)).epsilon(1e-6));
    }
    CHECK_THROWS(InteractionU::perturbed_quadratic(1.5));
}

TEST_CASE("potentials are convex increasing with V(0)=0") {
    for (auto v : {PotentialV::linear(), PotentialV::power(1.5), PotentialV::power(3.0)}) {
        CHECK(v(0.0) == 0.0);
        double prev = 0.0;
        for (double x = 0.25; x < 8.0; x += 0.25) {
            CHECK(v(x) >= prev);
            prev = v(x);
        }
        // midpoint convexity
        for (double a = 0.1; a < 5.0; a += 0.7)
            for (double b = a + 0.3; b < 6.0; b += 0.9)
                CHECK(v(0.5 * (a + b)) <= 0.5 * (v(a) + v(b)) + 1e-12);
    }
    CHECK_THROWS(PotentialV::power(0.5));
}

TEST_CASE("growth condition holds on the built-ins") {
    for (auto v : {PotentialV::linear(), PotentialV::power(2.0), PotentialV::power(4.0)}) {
        for (double alpha : {0.5, 2.0, 10.0}) {
            const double bound = growth_ratio_bound(v, alpha);
            CHECK(std::isfinite(bound));
            // convex polynomial: ratio approaches alpha^p
            CHECK(bound <= std::pow(alpha, 4.0) * 1.01 + 1.0);
        }
    }
}
