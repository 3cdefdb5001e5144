#pragma once

#include <cmath>
#include <cstdint>

// Counter-based randomness: every draw is a pure function of
// (seed, stream, index), so generation order and thread schedule
// cannot change the result.

namespace manifuse::rng {

// Stream tags keep independent uses of the same seed decorrelated.
enum : std::uint64_t {
    kStreamAngleBase = 0,    // streams 0..5: theta1..3, n1..3
    kStreamBasis = 100,
    kStreamSplits = 200,
    kStreamTriples = 300,
    kStreamProjection = 400,
    kStreamNoiseAux = 500,
};

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

// [0, 1), 53-bit resolution
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(hash3(seed, stream, index) >> 11) * 0x1.0p-53;
}

inline double uniform_angle(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return 2.0 * M_PI * uniform01(seed, stream, index);
}

// Standard normal via Box-Muller on two hashed uniforms.
inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t h1 = hash3(seed, stream, 2 * index);
    const std::uint64_t h2 = hash3(seed, stream, 2 * index + 1);
    // u1 in (0, 1] so the log is finite
    const double u1 = static_cast<double>((h1 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// index in [0, n) without modulo bias worth worrying about at 64 bits
inline std::size_t uniform_index(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index, std::size_t n) {
    return static_cast<std::size_t>(hash3(seed, stream, index) % n);
}

} // namespace manifuse::rng
