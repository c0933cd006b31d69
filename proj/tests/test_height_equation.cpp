#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "entropic/rng.hpp"
#include "entropic/scaling.hpp"

using namespace entropic;
using Catch::Approx;

TEST_CASE("height equation arithmetic cases") {
    CHECK(solve_height_equation(PotentialV::linear(), 0.5) == Approx(1.0).margin(1e-12));
    CHECK(solve_height_equation(PotentialV::linear(), 4.0) == Approx(0.5).margin(1e-12));
    CHECK(solve_height_equation(PotentialV::power(2.0), 1.0) ==
          Approx(std::pow(4.0, -0.25)).margin(1e-12));
}

TEST_CASE("residual below 1e-12 on random cases") {
    RngStream rng(2024, 0);
    for (int i = 0; i < 100; ++i) {
        const double lambda = std::pow(10.0, -6.0 + 9.0 * rng.uniform_co());
        const double p = 1.0 + 5.0 * rng.uniform_co();
        const auto v = PotentialV::power(p);
        const double h = solve_height_equation(v, lambda);
        CHECK(std::fabs(lambda * h * h * v(2.0 * h) - 1.0) < 1e-12);
    }
}

TEST_CASE("solution decreases in lambda") {
    const auto v = PotentialV::linear();
    double prev = 1e300;
    for (double lambda = 1e-4; lambda < 1e2; lambda *= 3.0) {
        const double h = solve_height_equation(v, lambda);
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("height scale uses the dimension exponent") {
    CHECK(height_scale(1e-3, 2) == Approx(std::fabs(std::log(1e-3))));
    CHECK(height_scale(1e-3, 3) == Approx(std::sqrt(std::fabs(std::log(1e-3)))));
}
