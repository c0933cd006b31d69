// The gradient-interface Gibbs model over a box with hard wall, delta
// pinning and convex external potential:
//
//   weight(X) = exp( -sum_{<i,j> meeting the box} U(X_i - X_j)
//                    -sum_i [ lambda*V(X_i) + penalty(X_i) ] )
//   reference measure per site: dX_i + upsilon * delta_0(dX_i),
//   heights outside the box clamped to 0.
//
// `penalty` is an optional soft slab confinement term used by the
// free-energy estimator; it is zero in ordinary runs.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "entropic/height_field.hpp"
#include "entropic/lattice.hpp"
#include "entropic/potentials.hpp"

namespace entropic {

// mu * max(x - ell, 0)^2; convex, so site conditionals stay log-concave
struct SlabPenalty {
    double mu = 0.0;
    double ell = 0.0;

    bool active() const { return mu != 0.0; }

    double operator()(double x) const {
        if (mu == 0.0) return 0.0;
        const double t = x - ell;
        return t > 0.0 ? mu * t * t : 0.0;
    }

    double deriv(double x) const {
        if (mu == 0.0) return 0.0;
        const double t = x - ell;
        return t > 0.0 ? 2.0 * mu * t : 0.0;
    }
};

// Neumaier compensated accumulator; keeps delta-tracked energies honest on
// large lattices.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class InterfaceModel {
public:
    InterfaceModel(LatticeBox box, InteractionU u, PotentialV v,
                   double lambda, double upsilon, bool pure_wetting = false)
        : box_(std::move(box)), u_(u), v_(v), lambda_(lambda), upsilon_(upsilon) {
        if (upsilon < 0.0) throw std::invalid_argument("InterfaceModel: upsilon must be >= 0");
        if (lambda < 0.0) throw std::invalid_argument("InterfaceModel: lambda must be >= 0");
        if (lambda == 0.0 && !pure_wetting)
            throw std::invalid_argument("InterfaceModel: lambda = 0 requires the pure-wetting flag");
    }

    const LatticeBox& box() const { return box_; }
    const InteractionU& u() const { return u_; }
    const PotentialV& v() const { return v_; }
    double lambda() const { return lambda_; }
    double upsilon() const { return upsilon_; }
    const SlabPenalty& penalty() const { return penalty_; }
    void set_penalty(SlabPenalty p) { penalty_ = p; }

    double site_potential(double x) const { return lambda_ * v_(x) + penalty_(x); }

    // full Hamiltonian, recomputed from scratch
    double energy(const HeightField& field) const {
        KahanSum acc;
        const int d = box_.dimension();
        for (std::int32_t s = 0; s < box_.size(); ++s) {
            const double xs = field.height(s);
            if (xs < 0.0) throw std::invalid_argument("InterfaceModel::energy: negative height");
            const auto* nb = box_.neighbors(s);
            for (int k = 0; k < d; ++k) {
                // +e_k edge once per site; -e_k edge only when it leaves the box
                acc.add(u_(xs - field.height(nb[2 * k + 1])));
                if (nb[2 * k] == LatticeBox::exterior) acc.add(u_(xs));
            }
            acc.add(site_potential(xs));
        }
        return acc.value();
    }

    // energy(field with site := new_value) - energy(field)
    double local_energy_delta(const HeightField& field, std::int32_t s, SiteHeight new_value) const {
        const double xn = new_value.value();
        const double xo = field.height(s);
        double d = site_potential(xn) - site_potential(xo);
        const auto* nb = box_.neighbors(s);
        for (int m = 0; m < 2 * box_.dimension(); ++m) {
            const double y = field.height(nb[m]);
            d += u_(xn - y) - u_(xo - y);
        }
        return d;
    }

    // log of the single-site conditional density w_s(x) w.r.t. dx + upsilon*delta_0;
    // the atom carries mass upsilon * exp(log_site_weight(., s, 0)).
    double log_site_weight(const HeightField& field, std::int32_t s, double x) const {
        if (x < 0.0) throw std::invalid_argument("InterfaceModel::log_site_weight: x must be >= 0");
        double lw = -site_potential(x);
        const auto* nb = box_.neighbors(s);
        for (int m = 0; m < 2 * box_.dimension(); ++m)
            lw -= u_(x - field.height(nb[m]));
        return lw;
    }

    // d/dx log w_s(x); strictly decreasing in x (log-concavity)
    double log_site_weight_deriv(const HeightField& field, std::int32_t s, double x) const {
        double g = -lambda_ * v_.deriv(x) - penalty_.deriv(x);
        const auto* nb = box_.neighbors(s);
        for (int m = 0; m < 2 * box_.dimension(); ++m)
            g -= u_.deriv(x - field.height(nb[m]));
        return g;
    }

    // guaranteed lower bound on -d^2/dx^2 log w_s(x), used as envelope curvature
    double min_log_curvature() const {
        const double nb_count = 2.0 * box_.dimension();
        return nb_count * u_.curvature_range().first + lambda_ * v_.min_curvature();
    }

    // closed-form Gaussian conditional applies
    bool gaussian_conditional() const {
        return u_.is_quadratic() && v_.is_linear() && !penalty_.active();
    }

private:
    LatticeBox box_;
    InteractionU u_;
    PotentialV v_;
    double lambda_;
    double upsilon_;
    SlabPenalty penalty_;
};

} // namespace entropic
