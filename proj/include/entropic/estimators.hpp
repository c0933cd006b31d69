// Time-series estimator with tau_int-corrected errors. tau_int uses the
// standard self-consistent window (window W grows until W >= 6*tau_int(W)),
// clamped below at 0.5 so i.i.d. input reproduces the plain standard error.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace entropic {

class EstimatorSeries {
public:
    EstimatorSeries() = default;
    explicit EstimatorSeries(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void add(double v) { values_.push_back(v); }
    std::size_t n() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    double mean() const {
        if (values_.empty()) return 0.0;
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(values_.size());
    }

    double variance() const {
        const std::size_t n = values_.size();
        if (n < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values_) s += (v - m) * (v - m);
        return s / static_cast<double>(n - 1);
    }

    double tau_int() const {
        const std::size_t n = values_.size();
        if (n < 8) return 0.5;
        const double m = mean();
        const double c0 = autocov(0, m);
        if (c0 <= 0.0) return 0.5;
        double tau = 0.5;
        const std::size_t wmax = std::min<std::size_t>(n / 4, 2000);
        for (std::size_t w = 1; w <= wmax; ++w) {
            const double rho = autocov(w, m) / c0;
            tau += rho;
            if (static_cast<double>(w) >= 6.0 * tau) break;
        }
        return std::max(tau, 0.5);
    }

    double stderror() const {
        const std::size_t n = values_.size();
        if (n < 2) return 0.0;
        return std::sqrt(variance() * 2.0 * tau_int() / static_cast<double>(n));
    }

private:
    double autocov(std::size_t lag, double m) const {
        const std::size_t n = values_.size();
        double s = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i)
            s += (values_[i] - m) * (values_[i + lag] - m);
        return s / static_cast<double>(n - lag);
    }

    std::string name_;
    std::vector<double> values_;
};

// covariance of two observables from their joint series, with a blocked
// jackknife error (20 blocks); used for the pair-covariance observable
struct CovarianceEstimate {
    double value = 0.0;
    double stderror = 0.0;
};

inline CovarianceEstimate blocked_covariance(const std::vector<double>& xs,
                                             const std::vector<double>& ys,
                                             int n_blocks = 20) {
    CovarianceEstimate out;
    const std::size_t n = std::min(xs.size(), ys.size());
    if (n < 4) return out;
    n_blocks = std::min<int>(n_blocks, static_cast<int>(n) / 2);
    double mx = 0.0, my = 0.0, mxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
        mxy += xs[i] * ys[i];
    }
    mx /= n;
    my /= n;
    mxy /= n;
    out.value = mxy - mx * my;

    // leave-one-block-out estimates
    std::vector<double> jk;
    const std::size_t bs = n / n_blocks;
    for (int b = 0; b < n_blocks; ++b) {
        const std::size_t lo = b * bs;
        const std::size_t hi = (b == n_blocks - 1) ? n : lo + bs;
        double sx = 0.0, sy = 0.0, sxy = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxy += xs[i] * ys[i];
        }
        const double cnt = static_cast<double>(n - (hi - lo));
        const double jx = (mx * n - sx) / cnt;
        const double jy = (my * n - sy) / cnt;
        const double jxy = (mxy * n - sxy) / cnt;
        jk.push_back(jxy - jx * jy);
    }
    double jm = 0.0;
    for (double v : jk) jm += v;
    jm /= jk.size();
    double jv = 0.0;
    for (double v : jk) jv += (v - jm) * (v - jm);
    out.stderror = std::sqrt(jv * (jk.size() - 1) / jk.size());
    return out;
}

} // namespace entropic
