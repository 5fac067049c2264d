#ifndef HYDRA_RNG_HPP_
#define HYDRA_RNG_HPP_

#include <cstdint>
#include <random>

namespace hydra {

// std::mt19937_64 output is pinned by the standard; the distribution adapters
// are not, so index/real draws are hand-rolled to keep runs byte-reproducible
// across standard libraries.

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// SplitMix64 scramble for deriving stream seeds from composite keys.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b * 0xBF58476D1CE4E5B9ull +
                      c * 0x94D049BB133111EBull + 0x2545F4914F6CDD1Dull;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace hydra

#endif  // HYDRA_RNG_HPP_
