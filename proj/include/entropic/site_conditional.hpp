// Exact single-site conditional of the interface measure at one site:
//
//   pin with probability  p = upsilon*w(0) / (upsilon*w(0) + I),
//   I = integral_0^inf w(x) dx,  else draw from the density w(x)/I,
//
// where w is the conditional weight given the current neighbors. The
// conditional is log-concave (U and the site potential are convex), which
// gives a unique mode and a rejection sampler with a guaranteed envelope.
//
// Quadratic U with linear V is an exact truncated Gaussian and takes a
// closed-form path; everything else goes through mode finding, a 40-nat
// cutoff, adaptive Gauss-Legendre for I, and envelope rejection with a
// grid inverse-CDF fallback when the acceptance rate collapses.
#pragma once

#include <cmath>
#include <vector>

#include "entropic/errors.hpp"
#include "entropic/interface_model.hpp"
#include "entropic/numeric.hpp"
#include "entropic/rng.hpp"

namespace entropic {

class SiteConditional {
public:
    SiteConditional(const InterfaceModel& model, const HeightField& field, std::int32_t site)
        : model_(model), field_(field), site_(site) {
        if (model.gaussian_conditional()) {
            gaussian_ = true;
            const int n = model.box().neighbors_per_site();
            double s = 0.0;
            const auto* nb = model.box().neighbors(site);
            for (int m = 0; m < n; ++m) s += field.height(nb[m]);
            prec_ = static_cast<double>(n);
            mean_ = (s - model.lambda()) / prec_;
            mode_ = mean_ > 0.0 ? mean_ : 0.0;
        } else {
            gaussian_ = false;
            find_mode();
        }
    }

    double mode() const { return mode_; }

    double log_weight(double x) const { return model_.log_site_weight(field_, site_, x); }

    // log( I / w(0) ), the continuous mass relative to the weight at the wall
    double log_integral_over_w0() const {
        if (gaussian_) {
            // I = w(0) * exp(prec*mean^2/2) * sqrt(2pi/prec) * P(Z > -mean*sqrt(prec))
            return 0.5 * prec_ * mean_ * mean_ +
                   0.5 * std::log(6.283185307179586 / prec_) +
                   log_normal_tail(-mean_ * std::sqrt(prec_));
        }
        const double lw0 = log_weight(0.0);
        const double lwm = log_weight(mode_);
        const double cut = forty_nat_cutoff();
        const double i_rel = integrate_adaptive(
            [&](double x) { return std::exp(log_weight(x) - lwm); }, 0.0, cut);
        if (!std::isfinite(i_rel) || i_rel <= 0.0)
            throw NumericalError("SiteConditional: non-finite conditional integral");
        return lwm - lw0 + std::log(i_rel);
    }

    // probability that the site sits in the atom at 0
    double pin_probability() const {
        const double ups = model_.upsilon();
        if (ups <= 0.0) return 0.0;
        const double r = std::log(ups) - log_integral_over_w0();
        // sigmoid(r)
        if (r > 0.0) return 1.0 / (1.0 + std::exp(-r));
        const double e = std::exp(r);
        return e / (1.0 + e);
    }

    // draw from the continuous part, strictly positive
    double sample(RngStream& rng) const {
        if (gaussian_) {
            const double a = -mean_ * std::sqrt(prec_);
            for (;;) {
                const double x = mean_ + truncated_standard_normal(a, rng) / std::sqrt(prec_);
                if (x > 0.0) return x;
            }
        }
        const double q_env = model_.min_log_curvature();
        const double sigma = 1.0 / std::sqrt(q_env);
        const double lwm = log_weight(mode_);
        if (mode_ > 0.0) {
            for (int tries = 0; tries < 256; ++tries) {
                const double x = mode_ + sigma * rng.normal();
                if (!(x > 0.0)) continue;
                const double d = x - mode_;
                if (std::log(rng.uniform()) <= log_weight(x) - lwm + 0.5 * q_env * d * d)
                    return x;
            }
        } else {
            const double slope = -model_.log_site_weight_deriv(field_, site_, 0.0);
            if (slope * sigma > 0.5) {
                for (int tries = 0; tries < 256; ++tries) {
                    const double x = rng.exponential(slope);
                    if (!(x > 0.0)) continue;
                    if (std::log(rng.uniform()) <= log_weight(x) - lwm + slope * x)
                        return x;
                }
            } else {
                for (int tries = 0; tries < 256; ++tries) {
                    const double x = std::fabs(sigma * rng.normal());
                    if (!(x > 0.0)) continue;
                    if (std::log(rng.uniform()) <= log_weight(x) - lwm + 0.5 * q_env * x * x)
                        return x;
                }
            }
        }
        return sample_grid_fallback(rng);
    }

private:
    void find_mode() {
        if (model_.log_site_weight_deriv(field_, site_, 0.0) <= 0.0) {
            mode_ = 0.0;
            return;
        }
        double hi = 1.0;
        while (model_.log_site_weight_deriv(field_, site_, hi) > 0.0) {
            hi *= 2.0;
            if (hi > 1e12) throw NumericalError("SiteConditional: mode search diverged");
        }
        double lo = hi > 1.0 ? hi * 0.5 : 0.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (model_.log_site_weight_deriv(field_, site_, mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        mode_ = 0.5 * (lo + hi);
    }

    // smallest x beyond the mode where the log-weight has dropped 40 nats
    double forty_nat_cutoff() const {
        const double lwm = log_weight(mode_);
        double step = 1.0;
        double x = mode_ + step;
        while (log_weight(x) > lwm - 40.0) {
            step *= 2.0;
            x = mode_ + step;
            if (step > 1e12) throw NumericalError("SiteConditional: cutoff search diverged");
        }
        return x;
    }

    double sample_grid_fallback(RngStream& rng) const {
        constexpr int n = 4096;
        const double cut = forty_nat_cutoff();
        const double lwm = log_weight(mode_);
        const double dx = cut / n;
        std::vector<double> cdf(n + 1, 0.0);
        double prev = std::exp(log_weight(0.0) - lwm);
        for (int i = 1; i <= n; ++i) {
            const double cur = std::exp(log_weight(i * dx) - lwm);
            cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * dx;
            prev = cur;
        }
        const double total = cdf[n];
        if (!(total > 0.0) || !std::isfinite(total))
            throw NumericalError("SiteConditional: degenerate grid CDF");
        const double u = rng.uniform() * total;
        int lo = 0, hi = n;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (cdf[mid] < u ? lo : hi) = mid;
        }
        const double seg = cdf[hi] - cdf[lo];
        double x = (lo + (seg > 0.0 ? (u - cdf[lo]) / seg : 0.5)) * dx;
        if (!(x > 0.0)) x = 0.5 * dx;
        return x;
    }

    const InterfaceModel& model_;
    const HeightField& field_;
    std::int32_t site_;
    bool gaussian_ = false;
    double mode_ = 0.0;
    double mean_ = 0.0; // gaussian path
    double prec_ = 1.0; // gaussian path
};

} // namespace entropic
