#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

namespace twistcube {

// Finalizer-style 64-bit avalanche (murmur3 constants).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// SplitMix64: one word of state, full 64-bit output, trivially seedable.
// Streams for independent consumers are derived with derive_stream below,
// which is what makes parallel construction deterministic.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    // Unbiased draw from [0, bound) by multiply-shift with rejection.
    std::uint64_t bounded(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t cutoff = (0 - bound) % bound;
            while (lo < cutoff) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t state_;
};

// Stream seed for a tagged consumer of a master seed. Distinct (a, b) pairs
// give unrelated streams regardless of evaluation order.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = mix64(master ^ 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (a * 0xbf58476d1ce4e5b9ULL));
    h = mix64(h ^ (b * 0x94d049bb133111ebULL));
    return h;
}

// In-place Fisher-Yates with unbiased index draws.
template <class T>
void fisher_yates(T* data, std::size_t size, SplitMix64& rng) {
    for (std::size_t i = size; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(data[i - 1], data[j]);
    }
}

}  // namespace twistcube
