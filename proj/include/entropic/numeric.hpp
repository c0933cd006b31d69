// Small numerical helpers shared by the samplers and the oracles.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "entropic/rng.hpp"

namespace entropic {

// log(erfc(z)) without underflow for large positive z
inline double log_erfc(double z) {
    if (z < 8.0) return std::log(std::erfc(z));
    // asymptotic erfc(z) ~ exp(-z^2)/(z sqrt(pi)) * (1 - 1/(2z^2) + 3/(4z^4))
    const double z2 = z * z;
    return -z2 - std::log(z * 1.7724538509055160273) +
           std::log1p(-0.5 / z2 + 0.75 / (z2 * z2));
}

// standard normal tail: log P(Z > z)
inline double log_normal_tail(double z) {
    return log_erfc(z * 0.7071067811865475244) - 0.6931471805599453094;
}

// Sample Z ~ N(0,1) conditioned on Z >= a. Naive resampling when the
// acceptance is decent, Robert's exponential-tilt rejection in the tail.
inline double truncated_standard_normal(double a, RngStream& rng) {
    if (a <= 0.5) {
        for (;;) {
            const double z = rng.normal();
            if (z >= a) return z;
        }
    }
    const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
        const double z = a + rng.exponential(alpha);
        const double d = z - alpha;
        if (std::log(rng.uniform()) <= -0.5 * d * d) return z;
    }
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
struct GaussLegendre16 {
    static constexpr std::array<double, 8> x = {
        0.0950125098376374401853193, 0.2816035507792589132304605,
        0.4580167776572273863424194, 0.6178762444026437484466718,
        0.7554044083550030338951012, 0.8656312023878317438804679,
        0.9445750230732325760779884, 0.9894009349916499325961542};
    static constexpr std::array<double, 8> w = {
        0.1894506104550684962853967, 0.1826034150449235888667637,
        0.1691565193950025381893121, 0.1495959888165767320815017,
        0.1246289712555338720524763, 0.0951585116824927848099251,
        0.0622535239386478928628438, 0.0271524594117540948517806};
};

// Integrate f over [a, b] with 16-point GL per panel, doubling the panel
// count until the relative change drops below rtol.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rtol = 1e-10, int max_panels = 256) {
    if (!(b > a)) return 0.0;
    double prev = 0.0;
    for (int panels = 4; panels <= max_panels; panels *= 2) {
        double total = 0.0;
        const double hw = (b - a) / (2.0 * panels);
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (2 * p + 1) * hw;
            double acc = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double dx = hw * GaussLegendre16::x[i];
                acc += GaussLegendre16::w[i] * (f(mid + dx) + f(mid - dx));
            }
            total += acc * hw;
        }
        if (panels > 4 && std::fabs(total - prev) <= rtol * (std::fabs(total) + 1e-300))
            return total;
        prev = total;
    }
    return prev;
}

} // namespace entropic
