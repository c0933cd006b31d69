// One-dimensional transfer operator over a height grid:
//
//   K(x, y) = exp(-U(x - y) - lambda*V(y)) * weight(y),
//
// with the atom node of weight upsilon at 0. The kernel is strictly
// positive, so the Perron root is simple; the bulk marginal of the infinite
// chain comes from the leading left/right eigenvector pair, and finite
// chains are handled by propagating boundary vectors. Power iteration runs
// on the symmetrized similar matrix D^{1/2} S D^{1/2} with Rayleigh-quotient
// stopping at 1e-12 relative.
#pragma once

#include <cmath>
#include <vector>

#include "entropic/errors.hpp"
#include "entropic/potentials.hpp"
#include "entropic/quadrature.hpp"
#include "entropic/scaling.hpp"

namespace entropic {

class TransferKernel1D {
public:
    TransferKernel1D(const InteractionU& u, const PotentialV& v, double lambda, double upsilon,
                     HeightGrid grid)
        : u_(u), v_(v), lambda_(lambda), grid_(std::move(grid)) {
        (void)upsilon; // carried by the grid's atom node
        const std::size_t m = grid_.nodes.size();
        if (m < 8) throw ConfigError("TransferKernel1D: grid too small");
        s_.assign(m * m, 0.0);
        d_.assign(m, 0.0);
        for (std::size_t b = 0; b < m; ++b)
            d_[b] = std::exp(-lambda_ * v_(grid_.nodes[b].x)) * grid_.nodes[b].w;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                s_[a * m + b] = std::exp(-u_(grid_.nodes[a].x - grid_.nodes[b].x));
    }

    const HeightGrid& grid() const { return grid_; }
    std::size_t size() const { return grid_.nodes.size(); }

    double leading_eigenvalue() const {
        ensure_eigenpair();
        return rho_;
    }

    // right eigenvector of K (phi_R); the left one is D * phi_R
    const std::vector<double>& right_eigenvector() const {
        ensure_eigenpair();
        return phi_r_;
    }

    // bulk (mid-chain, N -> infinity) marginal over the grid nodes
    std::vector<double> bulk_marginal() const {
        ensure_eigenpair();
        const std::size_t m = size();
        std::vector<double> marg(m);
        double z = 0.0;
        for (std::size_t b = 0; b < m; ++b) {
            marg[b] = d_[b] * phi_r_[b] * phi_r_[b];
            z += marg[b];
        }
        for (auto& x : marg) x /= z;
        return marg;
    }

    double bulk_mean_height() const {
        const auto marg = bulk_marginal();
        double s = 0.0;
        for (std::size_t b = 0; b < size(); ++b) s += marg[b] * grid_.nodes[b].x;
        return s;
    }

    double bulk_pinned_probability() const {
        const auto marg = bulk_marginal();
        double s = 0.0;
        for (std::size_t b = 0; b < size(); ++b)
            if (grid_.nodes[b].atom) s += marg[b];
        return s;
    }

    // marginal of the middle site of a finite chain of `length` sites with
    // zero boundary heights on both ends
    std::vector<double> mid_chain_marginal(int length) const {
        if (length < 1) throw ConfigError("TransferKernel1D: chain length must be >= 1");
        const int mid = (length + 1) / 2;
        std::vector<double> alpha = boundary_vector();
        for (int k = 1; k < mid; ++k) {
            alpha = apply_left(alpha);
            normalize(alpha);
        }
        std::vector<double> beta = end_vector();
        for (int k = length; k > mid; --k) {
            beta = apply_right(beta);
            normalize(beta);
        }
        std::vector<double> marg(size());
        double z = 0.0;
        for (std::size_t b = 0; b < size(); ++b) {
            marg[b] = alpha[b] * beta[b];
            z += marg[b];
        }
        if (!(z > 0.0)) throw NumericalError("TransferKernel1D: degenerate chain marginal");
        for (auto& x : marg) x /= z;
        return marg;
    }

    double mid_chain_mean_height(int length) const {
        const auto marg = mid_chain_marginal(length);
        double s = 0.0;
        for (std::size_t b = 0; b < size(); ++b) s += marg[b] * grid_.nodes[b].x;
        return s;
    }

    // log partition function of the finite chain with zero boundaries
    double log_partition(int length) const {
        std::vector<double> alpha = boundary_vector();
        double log_scale = 0.0;
        for (int k = 1; k < length; ++k) {
            alpha = apply_left(alpha);
            log_scale += normalize(alpha);
        }
        const auto e = end_vector();
        double dot = 0.0;
        for (std::size_t b = 0; b < size(); ++b) dot += alpha[b] * e[b];
        if (!(dot > 0.0)) throw NumericalError("TransferKernel1D: vanishing partition function");
        return log_scale + std::log(dot);
    }

    // crude second-eigenvalue estimate by orthogonal iteration (gap check)
    double second_eigenvalue_estimate(int iters = 400) const {
        ensure_eigenpair();
        const std::size_t m = size();
        // work in the symmetric representation
        std::vector<double> psi1(m), v(m);
        for (std::size_t b = 0; b < m; ++b) psi1[b] = std::sqrt(d_[b]) * phi_r_[b];
        normalize(psi1);
        for (std::size_t b = 0; b < m; ++b) v[b] = std::cos(double(b));
        double rho2 = 0.0;
        for (int it = 0; it < iters; ++it) {
            orthogonalize(v, psi1);
            auto w = apply_sym(v);
            double num = 0.0, den = 0.0;
            for (std::size_t b = 0; b < m; ++b) {
                num += v[b] * w[b];
                den += v[b] * v[b];
            }
            rho2 = num / den;
            v = std::move(w);
            normalize(v);
        }
        return std::fabs(rho2);
    }

private:
    std::vector<double> boundary_vector() const {
        // edge from the fixed height 0 outside into the first site
        const std::size_t m = size();
        std::vector<double> v0(m);
        for (std::size_t b = 0; b < m; ++b)
            v0[b] = std::exp(-u_(grid_.nodes[b].x)) * d_[b];
        return v0;
    }

    std::vector<double> end_vector() const {
        const std::size_t m = size();
        std::vector<double> e(m);
        for (std::size_t b = 0; b < m; ++b) e[b] = std::exp(-u_(grid_.nodes[b].x));
        return e;
    }

    // (alpha^T K) and (K beta)
    std::vector<double> apply_left(const std::vector<double>& a) const {
        const std::size_t m = size();
        std::vector<double> out(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double ai = a[i];
            const double* row = &s_[i * m];
            for (std::size_t b = 0; b < m; ++b) out[b] += ai * row[b];
        }
        for (std::size_t b = 0; b < m; ++b) out[b] *= d_[b];
        return out;
    }

    std::vector<double> apply_right(const std::vector<double>& b) const {
        const std::size_t m = size();
        std::vector<double> db(m);
        for (std::size_t j = 0; j < m; ++j) db[j] = d_[j] * b[j];
        std::vector<double> out(m, 0.0);
        for (std::size_t a = 0; a < m; ++a) {
            const double* row = &s_[a * m];
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * db[j];
            out[a] = acc;
        }
        return out;
    }

    std::vector<double> apply_sym(const std::vector<double>& x) const {
        const std::size_t m = size();
        std::vector<double> t(m);
        for (std::size_t j = 0; j < m; ++j) t[j] = std::sqrt(d_[j]) * x[j];
        std::vector<double> out(m, 0.0);
        for (std::size_t a = 0; a < m; ++a) {
            const double* row = &s_[a * m];
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * t[j];
            out[a] = acc * std::sqrt(d_[a]);
        }
        return out;
    }

    static double normalize(std::vector<double>& v) {
        double n = 0.0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        if (!(n > 0.0)) throw NumericalError("TransferKernel1D: zero vector in iteration");
        for (auto& x : v) x /= n;
        return std::log(n);
    }

    static void orthogonalize(std::vector<double>& v, const std::vector<double>& unit) {
        double dot = 0.0;
        for (std::size_t b = 0; b < v.size(); ++b) dot += v[b] * unit[b];
        for (std::size_t b = 0; b < v.size(); ++b) v[b] -= dot * unit[b];
    }

    void ensure_eigenpair() const {
        if (have_eigen_) return;
        const std::size_t m = size();
        std::vector<double> psi(m, 1.0);
        normalize(psi);
        double rho_prev = 0.0;
        int it = 0;
        for (; it < 200000; ++it) {
            auto w = apply_sym(psi);
            double rq = 0.0;
            for (std::size_t b = 0; b < m; ++b) rq += psi[b] * w[b];
            psi = std::move(w);
            normalize(psi);
            if (it > 4 && std::fabs(rq - rho_prev) <= 1e-12 * std::fabs(rq)) {
                rho_prev = rq;
                break;
            }
            rho_prev = rq;
        }
        if (it >= 200000) throw NumericalError("TransferKernel1D: power iteration did not converge");
        rho_ = rho_prev;
        phi_r_.assign(m, 0.0);
        for (std::size_t b = 0; b < m; ++b)
            phi_r_[b] = psi[b] / std::sqrt(d_[b]);
        have_eigen_ = true;
    }

    InteractionU u_;
    PotentialV v_;
    double lambda_;
    HeightGrid grid_;
    std::vector<double> s_; // symmetric factor exp(-U(x_a - x_b))
    std::vector<double> d_; // diagonal exp(-lambda V(x_b)) * w_b
    mutable bool have_eigen_ = false;
    mutable double rho_ = 0.0;
    mutable std::vector<double> phi_r_;
};

struct TransferResult {
    double mean_height = 0.0;
    double pinned_probability = 0.0;
    double eigenvalue = 0.0;
    double halving_rel_change = 0.0; // grid-halving stability of the mean
};

inline HeightGrid default_transfer_grid(const PotentialV& v, double lambda, double upsilon,
                                        int n_points = 1024) {
    double scale = 1.0;
    if (lambda > 0.0) scale = std::max(1.0, solve_height_equation(v, lambda));
    const double x_max = lambda > 0.0 ? 10.0 * scale : 30.0;
    return HeightGrid::make(x_max, n_points, upsilon);
}

// bulk mean height of the infinite chain, with a grid-halving stability check
inline TransferResult transfer_mean_height(const InteractionU& u, const PotentialV& v,
                                           double lambda, double upsilon,
                                           int chain_length = 0, int n_points = 1024) {
    auto grid = default_transfer_grid(v, lambda, upsilon, n_points);
    auto half = default_transfer_grid(v, lambda, upsilon, n_points / 2);
    TransferKernel1D fine(u, v, lambda, upsilon, std::move(grid));
    TransferKernel1D coarse(u, v, lambda, upsilon, std::move(half));
    TransferResult out;
    if (chain_length > 0) {
        out.mean_height = fine.mid_chain_mean_height(chain_length);
        const double mh_half = coarse.mid_chain_mean_height(chain_length);
        out.halving_rel_change = std::fabs(out.mean_height - mh_half) /
                                 std::max(1e-12, std::fabs(out.mean_height));
        out.eigenvalue = 0.0;
        const auto marg = fine.mid_chain_marginal(chain_length);
        for (std::size_t b = 0; b < fine.size(); ++b)
            if (fine.grid().nodes[b].atom) out.pinned_probability += marg[b];
        return out;
    }
    out.mean_height = fine.bulk_mean_height();
    const double mh_half = coarse.bulk_mean_height();
    out.halving_rel_change =
        std::fabs(out.mean_height - mh_half) / std::max(1e-12, std::fabs(out.mean_height));
    out.pinned_probability = fine.bulk_pinned_probability();
    out.eigenvalue = fine.leading_eigenvalue();
    return out;
}

// log P(all sites of a length-L chain stay in [0, ell]) via truncated grids
// that share the spacing of the full grid
inline double transfer_slab_log_probability(const InteractionU& u, const PotentialV& v,
                                            double lambda, double upsilon, int length,
                                            double ell, double x_max = 0.0, double dx_target = 0.02) {
    if (x_max <= 0.0) x_max = std::max(4.0 * ell, 10.0 * std::sqrt(double(length)));
    const int m_trunc = std::max(8, int(std::lround(ell / dx_target)));
    const double dx = ell / m_trunc;
    const int m_full = int(std::lround(x_max / dx));
    TransferKernel1D trunc(u, v, lambda, upsilon, HeightGrid::make(ell, m_trunc, upsilon));
    TransferKernel1D full(u, v, lambda, upsilon, HeightGrid::make(m_full * dx, m_full, upsilon));
    return trunc.log_partition(length) - full.log_partition(length);
}

} // namespace entropic
