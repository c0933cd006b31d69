#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "entropic/quadrature.hpp"

using namespace entropic;
using Catch::Approx;

namespace {
InterfaceModel model_2d(double lambda, double upsilon) {
    return InterfaceModel(LatticeBox(2, 1), InteractionU::quadratic(), PotentialV::linear(),
                          lambda, upsilon, lambda == 0.0);
}
} // namespace

TEST_CASE("grid integrates a known Gaussian density to 1e-8") {
    auto g = HeightGrid::make(8.0, 1 << 15, 0.0);
    // half-normal with sigma = 1
    const double got = g.integrate([](double x) {
        return std::sqrt(2.0 / M_PI) * std::exp(-0.5 * x * x);
    });
    const double want = std::erf(8.0 / std::sqrt(2.0));
    CHECK(std::fabs(got - want) < 1e-8);
}

TEST_CASE("atom node carries weight exactly upsilon") {
    auto g = HeightGrid::make(5.0, 64, 0.37);
    REQUIRE(g.nodes[0].atom);
    CHECK(g.nodes[0].w == 0.37);
    CHECK(g.nodes[0].x == 0.0);
    auto g0 = HeightGrid::make(5.0, 64, 0.0);
    CHECK_FALSE(g0.nodes[0].atom);
}

TEST_CASE("one free site, no field: half-normal mean height") {
    auto m = model_2d(0.0, 0.0);
    const std::vector<std::int32_t> free_sites = {m.box().center()};
    auto r = quadrature_expectation(m, free_sites,
                                    [](const std::vector<QuadPoint>& p) { return p[0].x; }, 1e-5);
    // density ~ exp(-2x^2): mean = 1/2 * sqrt(2/pi)
    CHECK(r.value == Approx(0.5 * std::sqrt(2.0 / M_PI)).margin(1e-6));
    CHECK(r.error < 1e-6);
}

TEST_CASE("pinning at upsilon = sqrt(pi/8) balances the continuous mass") {
    auto m = model_2d(0.0, std::sqrt(M_PI / 8.0));
    const std::vector<std::int32_t> free_sites = {m.box().center()};
    auto r = quadrature_expectation(
        m, free_sites, [](const std::vector<QuadPoint>& p) { return p[0].atom ? 1.0 : 0.0; }, 1e-5);
    CHECK(r.value == Approx(0.5).margin(1e-6));
}

TEST_CASE("two-site d=1 chain is exchange symmetric") {
    InterfaceModel m(LatticeBox(1, 1), InteractionU::quadratic(), PotentialV::linear(), 1.0, 0.0);
    // free pair (-1, 0): X_{-1} couples to the zero exterior, X_0 to the pinned site 1
    const std::vector<std::int32_t> free_sites = {0, 1};
    auto ex = quadrature_expectation(m, free_sites,
                                     [](const std::vector<QuadPoint>& p) { return p[0].x; }, 1e-4);
    auto ey = quadrature_expectation(m, free_sites,
                                     [](const std::vector<QuadPoint>& p) { return p[1].x; }, 1e-4);
    CHECK(ex.value == Approx(ey.value).epsilon(1e-10));
}

TEST_CASE("halving failure is reported as an error") {
    auto m = model_2d(0.0, 0.0);
    const std::vector<std::int32_t> free_sites = {m.box().center()};
    CHECK_THROWS_AS(quadrature_expectation(
                        m, free_sites,
                        [](const std::vector<QuadPoint>& p) { return p[0].x; }, 1e-15, 6.0, 16),
                    NumericalError);
}

TEST_CASE("evaluation budget is enforced") {
    auto m = model_2d(0.0, 0.0);
    std::vector<std::int32_t> free_sites = {0, 1, 2, 3};
    CHECK_THROWS_AS(quadrature_expectation(
                        m, free_sites, [](const std::vector<QuadPoint>&) { return 1.0; }, 1e-4,
                        5.0, 512),
                    ConfigError);
}

TEST_CASE("marginal histogram mass adds up") {
    auto m = model_2d(0.0, 0.5);
    const std::vector<std::int32_t> free_sites = {m.box().center()};
    auto h = quadrature_histogram(m, free_sites, 0, 64, 4.0);
    double mass = h.p_pin;
    for (double b : h.bins) mass += b;
    CHECK(mass == Approx(1.0).margin(1e-9));
    CHECK(h.p_pin > 0.3); // upsilon = 0.5 against I = sqrt(pi/8) ~ 0.6267
    CHECK(h.p_pin < 0.5);
}
