// Seedable, stream-splittable RNG. Every chain owns one stream, keyed by
// (seed, stream id), so ensemble results do not depend on scheduling order.
// std::normal_distribution is implementation-defined, so the normal variate
// is generated here (Box-Muller) to keep output bit-stable across toolchains.
#pragma once

#include <cmath>
#include <cstdint>

namespace entropic {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256++ with splitmix-derived state.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
        for (auto& w : s_) w = splitmix64(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on (0,1]; never returns 0, safe for log()
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform on [0,1)
    double uniform_co() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform_co();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // Lemire-style rejection-free enough for n << 2^64
        return next_u64() % n;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace entropic
