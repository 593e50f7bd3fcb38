#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Deterministic distributions on top of mt19937_64.  The standard library's
// normal_distribution / uniform_int_distribution are implementation-defined,
// which would tie outputs to one toolchain; these stay stable everywhere.

namespace cswm::prng {

// Uniform double in (0, 1]: 53 high bits, shifted into the half-open range
// so the Box-Muller log never sees zero.
inline double uniform_unit(std::mt19937_64& gen) {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller: each pair of uniforms yields two independent N(0,1) draws.
inline std::vector<double> normal_sequence(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double u1 = uniform_unit(gen);
        const double u2 = uniform_unit(gen);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        out.push_back(r * std::cos(t));
        if (out.size() < count) out.push_back(r * std::sin(t));
    }
    return out;
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % bound;
}

// First `count` entries of a Fisher-Yates shuffle of `pool`: a uniform
// sample without replacement, in selection order.
template <typename T>
std::vector<T> sample_without_replacement(std::mt19937_64& gen,
                                          std::vector<T> pool,
                                          std::size_t count) {
    if (count > pool.size()) count = pool.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(
                                      uniform_below(gen, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace cswm::prng
