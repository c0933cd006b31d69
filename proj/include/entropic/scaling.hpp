// Height scales of the delocalized interface and the closed-form height
// equation for the one-dimensional chain.
#pragma once

#include <cmath>
#include <stdexcept>

#include "entropic/potentials.hpp"

namespace entropic {

// exponent of |log lambda| in the repulsion height: 1 in d = 2, 1/2 above
inline double height_exponent(int d) { return d == 2 ? 1.0 : 0.5; }

// H(lambda, d) = |log lambda|^nu(d), the predicted mean-height scale (d >= 2)
inline double height_scale(double lambda, int d) {
    if (!(lambda > 0.0) || lambda >= 1.0) return 1.0;
    return std::pow(std::fabs(std::log(lambda)), height_exponent(d));
}

// Unique H > 0 with lambda * H^2 * V(2H) = 1 (d = 1 repulsion height).
// The left side is strictly increasing in H, so bisection converges; we
// stop on the value residual, |lambda H^2 V(2H) - 1| < 1e-12.
inline double solve_height_equation(const PotentialV& v, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_height_equation: lambda must be > 0");
    auto f = [&](double h) { return lambda * h * h * v(2.0 * h); };
    double lo = 1e-12, hi = 1e12;
    double mid = 1.0;
    for (int it = 0; it < 400; ++it) {
        mid = 0.5 * (lo + hi);
        const double val = f(mid);
        if (std::fabs(val - 1.0) < 1e-12) return mid;
        (val < 1.0 ? lo : hi) = mid;
    }
    return mid;
}

} // namespace entropic
