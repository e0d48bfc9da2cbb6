#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistcube {

// Vertex of an n-dimensional cube. Coordinate k lives in bit k-1, so the
// coordinate introduced last by the recursive construction is the top bit.
using VertexLabel = std::uint32_t;

inline constexpr int kMaxDimension = 30;

constexpr std::uint64_t vertex_count(int n) { return std::uint64_t{1} << n; }

constexpr int coordinate(VertexLabel v, int k) {
    return static_cast<int>((v >> (k - 1)) & 1u);
}

// Largest coordinate in which u and v differ; 0 iff u == v.
constexpr int alpha(VertexLabel u, VertexLabel v) {
    return static_cast<int>(std::bit_width(u ^ v));
}

inline void require_label(VertexLabel v, int n, const char* what = "vertex label") {
    if (v >= vertex_count(n)) {
        throw std::invalid_argument(std::string(what) + " " + std::to_string(v) +
                                    " out of range for dimension " + std::to_string(n));
    }
}

// Coordinate-n-first binary rendering, e.g. 5 at n=4 -> "0b0101".
inline std::string to_binary(VertexLabel v, int n) {
    std::string s = "0b";
    for (int k = n; k >= 1; --k) s.push_back(coordinate(v, k) ? '1' : '0');
    return s;
}

// Accepts decimal ("37") or binary with 0b prefix ("0b100101").
inline VertexLabel parse_vertex(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty vertex label");
    std::uint64_t value = 0;
    if (text.size() > 2 && (text[0] == '0') && (text[1] == 'b' || text[1] == 'B')) {
        for (std::size_t i = 2; i < text.size(); ++i) {
            char c = text[i];
            if (c != '0' && c != '1') {
                throw std::invalid_argument("bad binary vertex label: " + text);
            }
            value = (value << 1) | static_cast<std::uint64_t>(c - '0');
            if (value > 0xffffffffull) throw std::invalid_argument("vertex label too large: " + text);
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("bad vertex label: " + text);
            }
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (value > 0xffffffffull) throw std::invalid_argument("vertex label too large: " + text);
        }
    }
    return static_cast<VertexLabel>(value);
}

}  // namespace twistcube
