#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace twistcube {

// Exact binomial coefficient; arguments stay small here (n <= 64).
constexpr std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// Vertices reachable within distance d in an n-regular graph: min(2^n, 2*n^d).
constexpr std::uint64_t reachable_within(int n, int d) {
    const std::uint64_t all = std::uint64_t{1} << n;
    std::uint64_t bound = 2;
    for (int i = 0; i < d; ++i) {
        if (bound >= all) return all;
        if (bound > all / static_cast<std::uint64_t>(n)) return all;
        bound *= static_cast<std::uint64_t>(n);
    }
    return bound < all ? bound : all;
}

// Smallest d with 2*n^d >= 2^n, i.e. ceil((n-1)/log2 n), computed exactly.
// Any n-regular graph on 2^n vertices has diameter at least this.
constexpr int diameter_lower_bound(int n) {
    if (n < 2) return n;
    int d = 0;
    while (reachable_within(n, d) < (std::uint64_t{1} << n)) ++d;
    return d;
}

inline double log2d(double x) { return std::log2(x); }

// diam / (n / log2 n); the quantity the diameter trend is tracked against.
inline double diameter_ratio(int diameter, int n) {
    return static_cast<double>(diameter) * std::log2(static_cast<double>(n)) /
           static_cast<double>(n);
}

}  // namespace twistcube
