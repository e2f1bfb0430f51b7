// Counter-based random streams. Every draw is a pure function of
// (seed, realization, atom, component), so any disorder realization can be
// reconstructed in isolation and results do not depend on evaluation order
// or worker count.

#pragma once

#include <cmath>
#include <cstdint>

namespace wqed::rng {

/// SplitMix64 finalizer; good avalanche, passes standard statistical batteries
/// when used as a counter hash.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Hash of a (seed, realization, atom, component) counter tuple.
inline std::uint64_t key(std::uint64_t seed, std::uint64_t realization, std::uint64_t atom,
                         std::uint64_t component) noexcept {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (0x9E3779B97F4A7C15ull + realization));
    h = mix64(h ^ (0xC2B2AE3D27D4EB4Full + atom));
    h = mix64(h ^ (0x165667B19E3779F9ull + component));
    return h;
}

/// Uniform draw in the open interval (0, 1).
inline double uniform01(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw for the given counter tuple (Box-Muller on two
/// counter hashes; fully deterministic, no shared state).
inline double standard_normal(std::uint64_t seed, std::uint64_t realization,
                              std::uint64_t atom) noexcept {
    const double u1 = uniform01(key(seed, realization, atom, 0));
    const double u2 = uniform01(key(seed, realization, atom, 1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Gaussian draw with the given mean and standard deviation.
inline double normal(std::uint64_t seed, std::uint64_t realization, std::uint64_t atom,
                     double mean, double sigma) noexcept {
    return mean + sigma * standard_normal(seed, realization, atom);
}

}  // namespace wqed::rng
