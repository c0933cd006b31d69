// Box geometry for the gradient-interface model: sites of {-N..N}^d with
// neighbor tables. Sites outside the box are clamped to height 0, so
// neighbor slots pointing outside are marked `exterior`.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace entropic {

class LatticeBox {
public:
    static constexpr std::int32_t exterior = -1;

    LatticeBox(int dimension, int radius) : dim_(dimension), radius_(radius) {
        if (dimension < 1 || dimension > 6) throw std::invalid_argument("LatticeBox: dimension out of range");
        if (radius < 1) throw std::invalid_argument("LatticeBox: radius must be >= 1");
        side_ = 2 * radius + 1;
        size_ = 1;
        for (int k = 0; k < dim_; ++k) size_ *= side_;
        build_neighbors();
    }

    int dimension() const { return dim_; }
    int radius() const { return radius_; }
    int side() const { return side_; }
    std::int64_t size() const { return size_; }
    int neighbors_per_site() const { return 2 * dim_; }

    // flat index of coordinates in [-N, N]^d
    std::int32_t site(const std::vector<int>& coords) const {
        std::int64_t idx = 0;
        for (int k = 0; k < dim_; ++k) {
            const int c = coords[k];
            if (c < -radius_ || c > radius_) throw std::out_of_range("LatticeBox::site: coordinate outside box");
            idx = idx * side_ + (c + radius_);
        }
        return static_cast<std::int32_t>(idx);
    }

    std::vector<int> coords(std::int32_t s) const {
        std::vector<int> c(dim_);
        std::int64_t idx = s;
        for (int k = dim_ - 1; k >= 0; --k) {
            c[k] = static_cast<int>(idx % side_) - radius_;
            idx /= side_;
        }
        return c;
    }

    std::int32_t center() const { return site(std::vector<int>(dim_, 0)); }

    // neighbor in slot m (m = 2k: -e_k, m = 2k+1: +e_k), or `exterior`
    std::int32_t neighbor(std::int32_t s, int m) const {
        return nbr_[static_cast<std::size_t>(s) * 2 * dim_ + m];
    }

    const std::int32_t* neighbors(std::int32_t s) const {
        return nbr_.data() + static_cast<std::size_t>(s) * 2 * dim_;
    }

    // parity for checkerboard sweeps
    int color(std::int32_t s) const { return color_[s]; }

    bool on_boundary(std::int32_t s) const {
        const auto* nb = neighbors(s);
        for (int m = 0; m < 2 * dim_; ++m)
            if (nb[m] == exterior) return true;
        return false;
    }

private:
    void build_neighbors() {
        nbr_.resize(static_cast<std::size_t>(size_) * 2 * dim_);
        color_.resize(static_cast<std::size_t>(size_));
        std::vector<int> c(dim_, -radius_);
        for (std::int32_t s = 0; s < size_; ++s) {
            int parity = 0;
            for (int k = 0; k < dim_; ++k) parity += c[k];
            color_[s] = parity & 1;
            // stride of coordinate k in the flat index
            std::int64_t stride = 1;
            for (int k = dim_ - 1; k >= 0; --k) {
                nbr_[static_cast<std::size_t>(s) * 2 * dim_ + 2 * k] =
                    (c[k] == -radius_) ? exterior : static_cast<std::int32_t>(s - stride);
                nbr_[static_cast<std::size_t>(s) * 2 * dim_ + 2 * k + 1] =
                    (c[k] == radius_) ? exterior : static_cast<std::int32_t>(s + stride);
                stride *= side_;
            }
            // advance mixed-radix counter
            for (int k = dim_ - 1; k >= 0; --k) {
                if (++c[k] <= radius_) break;
                c[k] = -radius_;
            }
        }
    }

    int dim_;
    int radius_;
    int side_;
    std::int64_t size_;
    std::vector<std::int32_t> nbr_;
    std::vector<std::uint8_t> color_;
};

} // namespace entropic
