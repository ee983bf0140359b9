#pragma once

#include <cstdint>
#include <random>

#include "cgvrp/errors.hpp"

namespace cgvrp {

// All randomness in the library flows through std::mt19937_64 plus the
// helpers below. mt19937_64 output is fully specified by the standard and the
// helpers use only integer arithmetic on it, so streams are reproducible
// across platforms and standard libraries (std::uniform_*_distribution is
// implementation-defined and deliberately avoided).
using Rng = std::mt19937_64;

// Uniform double in [0, 1): top 53 bits of one generator draw.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], rejection sampling (no modulo bias).
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw ParameterError("uniform_int: empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) { // full 64-bit range
        return static_cast<std::int64_t>(rng());
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

// splitmix64 finalizer; used to derive independent seed streams, e.g. one
// optimizer seed per CG iteration from the run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace cgvrp
