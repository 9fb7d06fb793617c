#pragma once

#include <cstdint>
#include <random>

namespace qae {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-run seed H(base, cell, run) = mix64(mix64(mix64(base) ^ cell) ^ run).
constexpr std::uint64_t run_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t run) {
    return mix64(mix64(mix64(base) ^ cell) ^ run);
}

/// One uniform draw compared against p.
inline bool bernoulli(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

/// Number of heads in m tosses of a p-coin, from a single binomial draw.
inline std::int64_t binomial(Rng& rng, std::int64_t m, double p) {
    if (m <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return m;
    return std::binomial_distribution<std::int64_t>(m, p)(rng);
}

}  // namespace qae
