#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "twistcube/graph.hpp"

// TWC1 binary graph format, little-endian throughout:
//   magic "TWC1" | version u8 = 1 | policy u8 | n u8 | master seed u64 |
//   for k = 2..n, for each stored copy in ascending copy index:
//     2^(k-1) forward-table entries as u32.
// Inverse tables are rebuilt on load; IdentityMatching stores no tables.

namespace twistcube {

inline constexpr char kMagic[4] = {'T', 'W', 'C', '1'};
inline constexpr std::uint8_t kFormatVersion = 1;

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v & 0xffffffffull));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("twc: truncated stream");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t get_u64(std::istream& in) {
    const std::uint64_t lo = get_u32(in);
    const std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

}  // namespace detail

inline void save(const TwistedCube& g, std::ostream& out) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(kFormatVersion));
    out.put(static_cast<char>(g.coupling()));
    out.put(static_cast<char>(g.dimension()));
    detail::put_u64(out, g.seed());
    for (const MatchingLevel& lv : g.levels()) {
        for (std::uint32_t e : lv.forward) detail::put_u32(out, e);
    }
    if (!out) throw std::runtime_error("twc: write failed");
}

inline TwistedCube load(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || magic[0] != 'T' || magic[1] != 'W' || magic[2] != 'C' || magic[3] != '1') {
        throw std::runtime_error("twc: bad magic");
    }
    const int version = in.get();
    if (version != kFormatVersion) {
        throw std::runtime_error("twc: unsupported version " + std::to_string(version));
    }
    const int policy_byte = in.get();
    if (policy_byte < 0 || policy_byte > 2) {
        throw std::runtime_error("twc: bad policy byte " + std::to_string(policy_byte));
    }
    const auto policy = static_cast<CouplingPolicy>(policy_byte);
    const int n = in.get();
    if (!in) throw std::runtime_error("twc: truncated stream");
    if (n < 1 || n > kMaxDimension) {
        throw std::runtime_error("twc: dimension out of range: " + std::to_string(n));
    }
    const std::uint64_t seed = detail::get_u64(in);

    std::vector<std::vector<std::uint32_t>> tables;
    if (policy != CouplingPolicy::IdentityMatching && n >= 2) {
        tables.resize(static_cast<std::size_t>(n) - 1);
        for (int k = 2; k <= n; ++k) {
            const std::uint64_t copies = detail::copies_at_level(n, policy, k);
            const std::uint64_t entries = copies << (k - 1);
            std::vector<std::uint32_t> fwd(entries);
            for (std::uint64_t i = 0; i < entries; ++i) fwd[i] = detail::get_u32(in);
            tables[static_cast<std::size_t>(k) - 2] = std::move(fwd);
        }
    }
    if (in.peek() != std::istream::traits_type::eof()) {
        throw std::runtime_error("twc: trailing bytes after graph data");
    }
    return TwistedCube::from_tables(n, policy, seed, std::move(tables), true);
}

inline std::vector<std::uint8_t> serialize(const TwistedCube& g) {
    std::ostringstream out(std::ios::binary);
    save(g, out);
    const std::string s = out.str();
    return {s.begin(), s.end()};
}

inline TwistedCube deserialize(const std::vector<std::uint8_t>& bytes) {
    std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
    return load(in);
}

inline void save_file(const TwistedCube& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save(g, out);
}

inline TwistedCube load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load(in);
}

}  // namespace twistcube
