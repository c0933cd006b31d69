// Deterministic ground truth for tiny interface systems (<= 4 free sites):
// tensor-product quadrature over a height grid that carries the atom at 0
// as a distinguished node of weight upsilon next to trapezoid nodes for the
// Lebesgue part. Everything the samplers are tested against at small size
// comes from here.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "entropic/errors.hpp"
#include "entropic/interface_model.hpp"

namespace entropic {

struct HeightGrid {
    struct Node {
        double x;
        double w;
        bool atom;
    };
    std::vector<Node> nodes;
    double x_max = 0.0;
    int n_points = 0;

    // trapezoid nodes on [0, x_max] plus the atom node when upsilon > 0
    static HeightGrid make(double x_max, int n_points, double upsilon) {
        if (n_points < 8) throw ConfigError("HeightGrid: too few points");
        HeightGrid g;
        g.x_max = x_max;
        g.n_points = n_points;
        const double dx = x_max / n_points;
        if (upsilon > 0.0) g.nodes.push_back({0.0, upsilon, true});
        for (int i = 0; i <= n_points; ++i) {
            const double w = (i == 0 || i == n_points) ? 0.5 * dx : dx;
            g.nodes.push_back({i * dx, w, false});
        }
        return g;
    }

    // plain quadrature of f against the Lebesgue part plus the atom
    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (const auto& n : nodes) s += n.w * f(n.x);
        return s;
    }
};

struct QuadPoint {
    double x;
    bool atom;
};

// observable evaluated on the joint configuration of the free sites
using QuadObservable = std::function<double(const std::vector<QuadPoint>&)>;

namespace detail {

struct TinySystem {
    // free sites and their couplings; every non-free neighbor sits at height 0
    std::vector<std::pair<int, int>> free_edges; // indices into the free list
    std::vector<int> zero_edge_count;            // edges from free site to height-0 sites
    const InterfaceModel* model;

    double energy(const std::vector<QuadPoint>& pts) const {
        const auto& u = model->u();
        double e = 0.0;
        for (auto [a, b] : free_edges) e += u(pts[a].x - pts[b].x);
        for (std::size_t a = 0; a < pts.size(); ++a) {
            e += zero_edge_count[a] * u(pts[a].x);
            e += model->site_potential(pts[a].x);
        }
        return e;
    }
};

inline TinySystem build_tiny_system(const InterfaceModel& model,
                                    const std::vector<std::int32_t>& free_sites) {
    if (free_sites.empty() || free_sites.size() > 4)
        throw ConfigError("quadrature: between 1 and 4 free sites required");
    TinySystem sys;
    sys.model = &model;
    const auto& box = model.box();
    sys.zero_edge_count.assign(free_sites.size(), 0);
    for (std::size_t a = 0; a < free_sites.size(); ++a) {
        const auto* nb = box.neighbors(free_sites[a]);
        for (int m = 0; m < box.neighbors_per_site(); ++m) {
            int partner = -1;
            for (std::size_t b = 0; b < free_sites.size(); ++b)
                if (nb[m] != LatticeBox::exterior && nb[m] == free_sites[b]) partner = static_cast<int>(b);
            if (partner < 0)
                ++sys.zero_edge_count[a];
            else if (partner > static_cast<int>(a))
                sys.free_edges.push_back({static_cast<int>(a), partner});
        }
    }
    return sys;
}

// iterate the tensor product of grid nodes over the free sites
template <typename F>
void for_each_config(const HeightGrid& grid, int n_free, F&& body) {
    std::vector<std::size_t> idx(n_free, 0);
    std::vector<QuadPoint> pts(n_free);
    const std::size_t m = grid.nodes.size();
    for (;;) {
        double wprod = 1.0;
        for (int a = 0; a < n_free; ++a) {
            const auto& nd = grid.nodes[idx[a]];
            pts[a] = {nd.x, nd.atom};
            wprod *= nd.w;
        }
        body(pts, wprod);
        int a = n_free - 1;
        for (; a >= 0; --a) {
            if (++idx[a] < m) break;
            idx[a] = 0;
        }
        if (a < 0) break;
    }
}

struct RawExpectation {
    double value;
    double z;
};

inline RawExpectation expectation_on_grid(const TinySystem& sys, const HeightGrid& grid,
                                          const QuadObservable& obs) {
    const int n_free = static_cast<int>(sys.zero_edge_count.size());
    double z = 0.0, acc = 0.0;
    for_each_config(grid, n_free, [&](const std::vector<QuadPoint>& pts, double wprod) {
        const double w = wprod * std::exp(-sys.energy(pts));
        z += w;
        acc += w * obs(pts);
    });
    if (!(z > 0.0) || !std::isfinite(z))
        throw NumericalError("quadrature: degenerate partition function");
    return {acc / z, z};
}

} // namespace detail

// default truncation: smallest x where the most weakly tied free site has
// dropped 40 nats, stretched by the number of free sites stacking up
inline double default_quadrature_xmax(const InterfaceModel& model, int n_free) {
    int min_zero_edges = 2 * model.box().dimension();
    // the builder recomputes this per site; a single-site bound is enough here
    min_zero_edges = std::max(1, min_zero_edges - (n_free - 1));
    double x = 1.0;
    while (min_zero_edges * model.u()(x) + model.lambda() * model.v()(x) < 40.0) {
        x *= 1.25;
        if (x > 1e6) throw NumericalError("quadrature: cutoff search diverged");
    }
    return x * (1.0 + 0.5 * (n_free - 1));
}

inline int default_quadrature_points(int n_free) {
    switch (n_free) {
    case 1: return 8192;
    case 2: return 1024;
    case 3: return 288;
    default: return 80;
    }
}

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // Richardson halving estimate
};

// Expectation of `obs` under the tiny-system Gibbs measure, with a
// discretization error bar from comparing against the half-resolution grid.
// Throws when the halving error exceeds `tolerance`.
inline QuadratureResult quadrature_expectation(const InterfaceModel& model,
                                               const std::vector<std::int32_t>& free_sites,
                                               const QuadObservable& obs,
                                               double tolerance = 1e-4,
                                               double x_max = 0.0, int n_points = 0) {
    const auto sys = detail::build_tiny_system(model, free_sites);
    const int n_free = static_cast<int>(free_sites.size());
    if (x_max <= 0.0) x_max = default_quadrature_xmax(model, n_free);
    if (n_points <= 0) n_points = default_quadrature_points(n_free);
    const double evals = std::pow(double(n_points + 2), n_free);
    if (evals > 1e8) throw ConfigError("quadrature: grid too large (> 1e8 evaluations)");

    const auto fine = detail::expectation_on_grid(
        sys, HeightGrid::make(x_max, n_points, model.upsilon()), obs);
    const auto coarse = detail::expectation_on_grid(
        sys, HeightGrid::make(x_max, n_points / 2, model.upsilon()), obs);
    QuadratureResult out;
    out.value = fine.value;
    out.error = std::fabs(fine.value - coarse.value) / 3.0;
    if (out.error > tolerance)
        throw NumericalError("quadrature: halving error above tolerance; grid too coarse");
    return out;
}

struct MarginalHistogram {
    double p_pin = 0.0;
    std::vector<double> bins; // Lebesgue mass per bin on [0, x_hi], overshoot in last bin
    double x_hi = 0.0;
};

// marginal of one free site, binned the same way the samplers bin their draws
inline MarginalHistogram quadrature_histogram(const InterfaceModel& model,
                                              const std::vector<std::int32_t>& free_sites,
                                              std::size_t which, int n_bins, double x_hi,
                                              double x_max = 0.0, int n_points = 0) {
    const auto sys = detail::build_tiny_system(model, free_sites);
    const int n_free = static_cast<int>(free_sites.size());
    if (x_max <= 0.0) x_max = default_quadrature_xmax(model, n_free);
    if (n_points <= 0) n_points = default_quadrature_points(n_free);

    MarginalHistogram h;
    h.x_hi = x_hi;
    h.bins.assign(n_bins, 0.0);
    double z = 0.0, pin = 0.0;
    detail::for_each_config(
        HeightGrid::make(x_max, n_points, model.upsilon()), n_free,
        [&](const std::vector<QuadPoint>& pts, double wprod) {
            const double w = wprod * std::exp(-sys.energy(pts));
            z += w;
            if (pts[which].atom) {
                pin += w;
                return;
            }
            int b = static_cast<int>(pts[which].x / x_hi * n_bins);
            if (b >= n_bins) b = n_bins - 1;
            h.bins[b] += w;
        });
    if (!(z > 0.0)) throw NumericalError("quadrature_histogram: degenerate weight");
    h.p_pin = pin / z;
    for (auto& b : h.bins) b /= z;
    return h;
}

} // namespace entropic
