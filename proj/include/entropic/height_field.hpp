// Tagged per-site heights. A site is either Pinned (carries the atom at 0)
// or Free with a strictly positive height. Encoding: the stored double is
// exactly 0.0 iff pinned, so the pinned-fraction observable counts atom
// occupancy exactly while the hot loops stay on a flat double array.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "entropic/lattice.hpp"

namespace entropic {

class SiteHeight {
public:
    static SiteHeight pinned() { return SiteHeight(0.0); }

    static SiteHeight free(double x) {
        if (!(x > 0.0)) throw std::invalid_argument("SiteHeight::free: height must be > 0");
        return SiteHeight(x);
    }

    bool is_pinned() const { return v_ == 0.0; }
    double value() const { return v_; }

    friend bool operator==(SiteHeight a, SiteHeight b) { return a.v_ == b.v_; }

private:
    explicit SiteHeight(double v) : v_(v) {}
    double v_;
};

class HeightField {
public:
    explicit HeightField(const LatticeBox& box)
        : h_(static_cast<std::size_t>(box.size()), 0.0) {}

    HeightField(const LatticeBox& box, SiteHeight fill)
        : h_(static_cast<std::size_t>(box.size()), fill.value()) {}

    std::int64_t size() const { return static_cast<std::int64_t>(h_.size()); }

    // height with the exterior convention built in
    double height(std::int32_t s) const { return s == LatticeBox::exterior ? 0.0 : h_[s]; }
    bool is_pinned(std::int32_t s) const { return height(s) == 0.0; }

    SiteHeight at(std::int32_t s) const {
        const double v = height(s);
        return v == 0.0 ? SiteHeight::pinned() : SiteHeight::free(v);
    }

    void set(std::int32_t s, SiteHeight v) { h_[s] = v.value(); }
    void set_pinned(std::int32_t s) { h_[s] = 0.0; }

    void set_free(std::int32_t s, double x) {
        if (!(x > 0.0)) throw std::invalid_argument("HeightField::set_free: height must be > 0");
        h_[s] = x;
    }

    std::int64_t pinned_count() const {
        std::int64_t n = 0;
        for (double v : h_)
            if (v == 0.0) ++n;
        return n;
    }

    const std::vector<double>& raw() const { return h_; }

    friend bool operator==(const HeightField& a, const HeightField& b) { return a.h_ == b.h_; }

private:
    std::vector<double> h_;
};

} // namespace entropic
