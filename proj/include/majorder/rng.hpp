#pragma once

#include <cstdint>
#include <cmath>

namespace majorder {

// xoshiro256++ seeded through splitmix64. Hand-rolled so that streams are
// bit-identical across platforms, standard libraries and thread counts;
// per-instance substreams are derived from (seed, cell, instance) and never
// share state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    Rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b)
        : Rng(mix(mix(seed, stream_a + 1), stream_b + 1)) {}

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1): 53 mantissa bits, identical everywhere.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in the open interval (0, 1), for convex-combination weights.
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // Standard exponential via inversion; used for Dirichlet weights.
    double exponential() { return -std::log(uniform_open()); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = a ^ (b * 0x9E3779B97F4A7C15ULL);
        return splitmix64(x);
    }

    std::uint64_t state_[4];
};

} // namespace majorder
