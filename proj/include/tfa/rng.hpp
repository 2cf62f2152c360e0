// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "tfa/common.hpp"

namespace tfa {

// Counter-based random streams. A draw is a pure function of
// (seed, stream, counter), so results do not depend on call order or
// thread count, and distinct streams derived from one master seed are
// independent for all practical purposes.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t key64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t z = mix64(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
    z = mix64(z ^ (0xaf251af3b0f025b5ULL * counter));
    return mix64(z ^ counter);
}

// Uniform in (0,1]; never returns 0 so log() is always finite.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t bits = key64(seed, stream, counter) >> 11;
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double u1 = uniform(seed, stream, 2 * counter);
    const double u2 = uniform(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Circularly symmetric complex normal with E|z|^2 = 1.
inline cplx complex_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double re = normal(seed, stream, 2 * counter);
    const double im = normal(seed, stream, 2 * counter + 1);
    return cplx(re, im) / std::sqrt(2.0);
}

// Derive a child seed, e.g. one per Monte-Carlo trial.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    return key64(seed, stream, 0x5eedULL);
}

// Named streams used by the harness.
inline constexpr std::uint64_t kStreamChannel = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamSymbols = 3;
inline constexpr std::uint64_t kStreamMonteCarlo = 4;

}  // namespace rng

// Sequential convenience wrapper over the keyed functions.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    double uniform() { return rng::uniform(seed_, stream_, counter_++); }
    double normal() { return rng::normal(seed_, stream_, counter_++); }
    cplx complex_normal() { return rng::complex_normal(seed_, stream_, counter_++); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace tfa
