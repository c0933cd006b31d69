#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "entropic/transfer.hpp"

using namespace entropic;
using Catch::Approx;

TEST_CASE("repelled height sits inside the order-of-magnitude band") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    const double lambda = 0.01;
    auto r = transfer_mean_height(u, v, lambda, 0.0);
    const double h = solve_height_equation(v, lambda); // ~3.684
    CHECK(h == Approx(3.684).margin(0.01));
    CHECK(r.mean_height > 0.5 * h);
    CHECK(r.mean_height < 2.0 * h);
    CHECK(r.halving_rel_change < 0.005);
}

TEST_CASE("strong field crushes the interface") {
    auto r = transfer_mean_height(InteractionU::quadratic(), PotentialV::linear(), 10.0, 0.0);
    CHECK(r.mean_height < 1.0);
}

TEST_CASE("slope of log height vs log lambda near -1/3") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    // regression over 4 points spanning [1e-4, 1e-1]
    std::vector<double> lx, ly;
    for (double lambda : {1e-4, 1e-3, 1e-2, 1e-1}) {
        auto r = transfer_mean_height(u, v, lambda, 0.0);
        lx.push_back(std::log(lambda));
        ly.push_back(std::log(r.mean_height));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope > -0.36);
    CHECK(slope < -0.30);
}

TEST_CASE("pinning localizes the chain: no growth from L to 2L") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    TransferKernel1D k(u, v, 0.0, 1.0, HeightGrid::make(25.0, 1024, 1.0));
    const double m1 = k.mid_chain_mean_height(32);
    const double m2 = k.mid_chain_mean_height(64);
    CHECK(m2 / m1 < 1.1);
    CHECK(k.bulk_pinned_probability() > 0.05);
}

TEST_CASE("free chain does grow from L to 2L") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    TransferKernel1D k(u, v, 0.0, 0.0, HeightGrid::make(60.0, 2048, 0.0));
    const double m1 = k.mid_chain_mean_height(32);
    const double m2 = k.mid_chain_mean_height(64);
    CHECK(m2 / m1 > 1.15); // entropic repulsion: sqrt(L)-ish growth
}

TEST_CASE("Perron root is simple (positive spectral gap)") {
    TransferKernel1D k(InteractionU::quadratic(), PotentialV::linear(), 0.05, 0.3,
                       HeightGrid::make(20.0, 512, 0.3));
    const double rho = k.leading_eigenvalue();
    const double rho2 = k.second_eigenvalue_estimate();
    CHECK(rho > 0.0);
    CHECK(rho2 < rho * (1.0 - 1e-6));
    // all entries positive by construction
    const auto& g = k.grid();
    CHECK(g.nodes.size() > 0);
}

TEST_CASE("transfer and quadrature agree on a 3-site chain") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    const double lambda = 0.5;
    InterfaceModel m(LatticeBox(1, 1), u, v, lambda, 0.0);
    const std::vector<std::int32_t> free_sites = {0, 1, 2};
    auto q = quadrature_expectation(m, free_sites,
                                    [](const std::vector<QuadPoint>& p) { return p[1].x; }, 1e-3);
    TransferKernel1D k(u, v, lambda, 0.0, HeightGrid::make(12.0, 2048, 0.0));
    const double t = k.mid_chain_mean_height(3);
    CHECK(t == Approx(q.value).epsilon(0.01));
}

TEST_CASE("slab probability decreases with tighter slabs") {
    const auto u = InteractionU::quadratic();
    const auto v = PotentialV::linear();
    const double p1 = transfer_slab_log_probability(u, v, 0.0, 0.0, 9, 1.0);
    const double p2 = transfer_slab_log_probability(u, v, 0.0, 0.0, 9, 2.0);
    CHECK(p1 < p2);
    CHECK(p2 < 0.0);
}
