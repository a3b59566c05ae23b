#pragma once

#include <cmath>
#include <cstdint>

namespace graphsim {

// splitmix64: the project-wide seeded generator. Every dataset, graph and
// Monte Carlo trial derives its stream from a 64-bit seed through this
// mixer, so runs are bit-reproducible across platforms and languages.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // standard normal via Box-Muller (two uniforms consumed per call, no
    // caching, so the stream position stays predictable)
    double next_gaussian();
};

inline double SplitMix64::next_gaussian() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Deterministic per-task seed derivation: mix(seed, index) through the
// same finalizer, so parallel trials get independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return g.next_u64();
}

}  // namespace graphsim
