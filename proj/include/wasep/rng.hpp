#pragma once

#include <cmath>
#include <cstdint>

namespace wasep {

// splitmix64, used only to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with explicit, platform-independent sampling helpers.
// Replica streams are derived counter-style from (seed, stream_id) so that
// parallel scheduling cannot reorder randomness.
class Rng {
public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
        for (auto& si : s_) si = splitmix64(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
        have_gauss_ = false;
        gauss_ = 0.0;
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

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1], safe for log()
    double uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Box-Muller; caches the second variate.
    double gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return gauss_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        gauss_ = r * std::sin(a);
        have_gauss_ = true;
        return r * std::cos(a);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    bool have_gauss_;
    double gauss_;
};

inline Rng replica_rng(std::uint64_t seed, std::uint64_t replica) {
    return Rng(seed, replica);
}

}  // namespace wasep
