#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace groundctl {

// Counter-based random numbers: every draw is a pure function of (seed, keys),
// so parallel reductions and reruns are bit-identical regardless of thread
// scheduling. splitmix64 finalizer chain.

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dull);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

/// Uniform in (0,1); never returns 0 or 1.
inline double uniform01(uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller from two hashed uniforms.
inline double normal01(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    const double u1 = uniform01(counter_hash(seed, a, b, 2 * c));
    const double u2 = uniform01(counter_hash(seed, a, b, 2 * c + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace groundctl
