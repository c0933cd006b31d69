// Interaction and external-potential families.
//
// U is even with curvature pinned inside [c, 1/c]: the quadratic x^2/2
// (curvature 1) and the perturbed quadratic x^2/2 + delta*log cosh x
// (curvature in [1, 1+delta], 0 <= delta <= 1). V is convex, increasing,
// V(0) = 0: V(x) = x or V(x) = x^p, p >= 1.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace entropic {

namespace detail {
inline double log_cosh(double x) {
    const double a = std::fabs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094;
}
} // namespace detail

class InteractionU {
public:
    enum class Family { Quadratic, PerturbedQuadratic };

    static InteractionU quadratic() { return InteractionU(Family::Quadratic, 0.0); }

    static InteractionU perturbed_quadratic(double delta) {
        if (delta < 0.0 || delta > 1.0)
            throw std::invalid_argument("InteractionU: delta must be in [0,1]");
        return InteractionU(Family::PerturbedQuadratic, delta);
    }

    Family family() const { return family_; }
    double delta() const { return delta_; }
    bool is_quadratic() const { return family_ == Family::Quadratic; }

    double operator()(double x) const {
        if (family_ == Family::Quadratic) return 0.5 * x * x;
        return 0.5 * x * x + delta_ * detail::log_cosh(x);
    }

    double deriv(double x) const {
        if (family_ == Family::Quadratic) return x;
        return x + delta_ * std::tanh(x);
    }

    double second_deriv(double x) const {
        if (family_ == Family::Quadratic) return 1.0;
        const double t = std::tanh(x);
        return 1.0 + delta_ * (1.0 - t * t);
    }

    // [min, max] of U'' over the real line
    std::pair<double, double> curvature_range() const {
        return {1.0, 1.0 + delta_};
    }

    std::string name() const {
        return family_ == Family::Quadratic ? "quadratic" : "perturbed_quadratic";
    }

private:
    InteractionU(Family f, double d) : family_(f), delta_(d) {}
    Family family_;
    double delta_;
};

class PotentialV {
public:
    enum class Family { Linear, Power };

    static PotentialV linear() { return PotentialV(Family::Linear, 1.0); }

    static PotentialV power(double p) {
        if (p < 1.0) throw std::invalid_argument("PotentialV: power must be >= 1");
        return PotentialV(Family::Power, p);
    }

    Family family() const { return family_; }
    double power_exponent() const { return p_; }
    bool is_linear() const { return family_ == Family::Linear || p_ == 1.0; }

    double operator()(double x) const {
        if (is_linear()) return x;
        return std::pow(x, p_);
    }

    double deriv(double x) const {
        if (is_linear()) return 1.0;
        return p_ * std::pow(x, p_ - 1.0);
    }

    double second_deriv(double x) const {
        if (is_linear()) return 0.0;
        if (p_ == 2.0) return 2.0;
        return p_ * (p_ - 1.0) * std::pow(x, p_ - 2.0);
    }

    // inf of V'' on [0, inf); what an envelope sampler may safely assume
    double min_curvature() const { return p_ == 2.0 ? 2.0 : 0.0; }

    std::string name() const { return is_linear() ? "linear" : "power"; }

private:
    PotentialV(Family f, double p) : family_(f), p_(p) {}
    Family family_;
    double p_;
};

// Numerical check of the growth condition: max over a log grid of
// V(alpha*x)/V(x). Finite for any convex polynomial; used by validation
// tests, not by hot paths.
inline double growth_ratio_bound(const PotentialV& v, double alpha,
                                 double x_lo = 1e-3, double x_hi = 1e6, int n = 200) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = x_lo * std::pow(x_hi / x_lo, double(i) / (n - 1));
        const double d = v(x);
        if (d <= 0.0) continue;
        worst = std::max(worst, v(alpha * x) / d);
    }
    return worst;
}

} // namespace entropic
