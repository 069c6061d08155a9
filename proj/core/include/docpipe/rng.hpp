#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace docpipe {

/// FNV-1a. std::hash is implementation defined; seeds derived from ids must
/// not vary across standard libraries.
constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

/// splitmix64 step; used to derive independent per-document seeds from one
/// corpus seed without correlated low bits.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ b);
}

/// Unbiased bounded draw. std::uniform_int_distribution is implementation
/// defined, so corpus bytes would differ across standard libraries; mt19937_64
/// plus this rejection step is fully pinned down.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

/// Inclusive range draw.
inline std::uint64_t between(std::mt19937_64& rng, std::uint64_t lo,
                             std::uint64_t hi) {
    return lo + bounded(rng, hi - lo + 1);
}

/// Bernoulli trial with probability p, consuming exactly one draw.
inline bool chance(std::mt19937_64& rng, double p) {
    if (p <= 0.0) {
        rng();
        return false;
    }
    if (p >= 1.0) {
        rng();
        return true;
    }
    constexpr double kScale = 1.0 / 18446744073709551616.0;  // 2^-64
    return static_cast<double>(rng()) * kScale < p;
}

}  // namespace docpipe
