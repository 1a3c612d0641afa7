#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace promptret {

// All randomized behaviour in the library flows through these helpers so that
// results are bit-reproducible across platforms. std::mt19937_64 output is
// fixed by the standard; the distributions below avoid std::uniform_*
// distributions, whose draw sequences are implementation-defined.
using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::uint64_t bounded_uniform(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [lo, hi) from 53 random mantissa bits.
inline double uniform_real(Rng& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

// Fisher-Yates shuffle with a deterministic draw sequence.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uniform(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

// First `count` elements of a random permutation of [0, n).
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n,
                                                           std::size_t count) {
    if (count > n) count = n;
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded_uniform(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace promptret
