#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mea {

// splitmix64 finalizer. Used to derive independent sub-seeds so that results
// never depend on evaluation order or thread count.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(seed ^ mix64(a ^ mix64(b)));
}

// Unbiased draw from [0, bound). Rejection sampling instead of
// std::uniform_int_distribution, whose output is implementation-defined.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = (~0ULL) / bound * bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// First k elements of a Fisher-Yates shuffle; the prefix for k1 < k2 is a
// prefix of the one for k2 under the same generator state.
template <typename T>
std::vector<T> sample_prefix(std::vector<T> items, std::size_t k, std::mt19937_64& rng) {
    if (k > items.size()) k = items.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_below(rng, items.size() - i);
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
}

}  // namespace mea
