#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistcube/errors.hpp"
#include "twistcube/label.hpp"
#include "twistcube/parallel.hpp"
#include "twistcube/rng.hpp"

namespace twistcube {

// Joint distribution of the two half-cubes used at every recursive step.
enum class CouplingPolicy : std::uint8_t {
    Independent = 0,      // every copy at every level draws its own matching
    Duplicube = 1,        // all copies of a level share one matching
    IdentityMatching = 2  // matchings are identities: the graph is exactly Q_n
};

inline const char* policy_name(CouplingPolicy p) {
    switch (p) {
        case CouplingPolicy::Independent: return "independent";
        case CouplingPolicy::Duplicube: return "duplicube";
        case CouplingPolicy::IdentityMatching: return "identity";
    }
    return "?";
}

inline CouplingPolicy parse_policy(const std::string& name) {
    if (name == "independent") return CouplingPolicy::Independent;
    if (name == "duplicube") return CouplingPolicy::Duplicube;
    if (name == "identity") return CouplingPolicy::IdentityMatching;
    throw std::invalid_argument("unknown policy '" + name +
                                "' (expected independent|duplicube|identity)");
}

// Matching tables for one recursion level k. The level-k matching joins the
// two halves of a copy of the k-dimensional sub-instance: forward maps the
// low k-1 bits of a coordinate-k=0 vertex to the low bits of its partner,
// inverse answers the other direction. Tables of all copies of the level are
// stored flat, copy-major.
struct MatchingLevel {
    int level = 0;
    std::uint32_t copies = 0;
    std::vector<std::uint32_t> forward;
    std::vector<std::uint32_t> inverse;

    std::uint32_t half_size() const { return std::uint32_t{1} << (level - 1); }
    bool operator==(const MatchingLevel&) const = default;
};

// Bytes of table storage build() will allocate.
inline std::uint64_t table_bytes(int n, CouplingPolicy policy) {
    if (policy == CouplingPolicy::IdentityMatching || n < 2) return 0;
    std::uint64_t entries = 0;
    for (int k = 2; k <= n; ++k) {
        const std::uint64_t copies =
            policy == CouplingPolicy::Independent ? (std::uint64_t{1} << (n - k)) : 1;
        entries += copies * 2 * (std::uint64_t{1} << (k - 1));  // forward + inverse
    }
    return entries * sizeof(std::uint32_t);
}

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{8} << 30;  // 8 GiB

// TWISTCUBE_MEM_BUDGET (bytes) overrides the default budget.
inline std::uint64_t memory_budget_from_env() {
    if (const char* env = std::getenv("TWISTCUBE_MEM_BUDGET")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0) return parsed;
    }
    return kDefaultMemoryBudget;
}

struct BuildOptions {
    unsigned threads = 0;             // 0 = hardware concurrency
    std::uint64_t memory_budget = 0;  // bytes; 0 = env override or 8 GiB default
};

// An immutable sample of the n-dimensional twisted hypercube: 2^n vertices,
// n-regular, with the level-k edge of v reachable through neighbor(v, k).
// Construction is a pure function of (n, policy, seed).
class TwistedCube {
  public:
    int dimension() const { return n_; }
    CouplingPolicy coupling() const { return policy_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t num_vertices() const { return vertex_count(n_); }
    std::uint64_t num_edges() const { return (num_vertices() * n_) / 2; }

    // eta_k(v): flips coordinate k, keeps coordinates above k, and maps the
    // coordinates below k through the level-k matching of v's copy.
    VertexLabel neighbor(VertexLabel v, int k) const {
        if (k < 1 || k > n_) {
            throw std::out_of_range("level " + std::to_string(k) +
                                    " out of range for dimension " + std::to_string(n_));
        }
        return neighbor_unchecked(v, k);
    }

    // Hot path; requires 1 <= k <= n and v < 2^n.
    VertexLabel neighbor_unchecked(VertexLabel v, int k) const {
        if (k == 1) return v ^ 1u;
        if (policy_ == CouplingPolicy::IdentityMatching) return v ^ (VertexLabel{1} << (k - 1));
        const MatchingLevel& lv = levels_[static_cast<std::size_t>(k) - 2];
        const VertexLabel half = VertexLabel{1} << (k - 1);
        const VertexLabel low = v & (half - 1);
        const VertexLabel high = v & ~((half << 1) - 1);
        std::size_t base = 0;
        if (policy_ == CouplingPolicy::Independent) {
            base = static_cast<std::size_t>(v >> k) << (k - 1);
        }
        if (v & half) return high | lv.inverse[base + low];
        return high | half | lv.forward[base + low];
    }

    std::vector<VertexLabel> neighbors(VertexLabel v) const {
        require_label(v, n_);
        std::vector<VertexLabel> out(static_cast<std::size_t>(n_));
        for (int k = 1; k <= n_; ++k) out[static_cast<std::size_t>(k) - 1] = neighbor_unchecked(v, k);
        return out;
    }

    const MatchingLevel& level(int k) const {
        if (k < 2 || k > n_ || policy_ == CouplingPolicy::IdentityMatching) {
            throw std::out_of_range("no stored matching at level " + std::to_string(k));
        }
        return levels_[static_cast<std::size_t>(k) - 2];
    }

    const std::vector<MatchingLevel>& levels() const { return levels_; }

    bool operator==(const TwistedCube&) const = default;

    // Assembles a graph from explicit forward tables (one flat, copy-major
    // table per level k = 2..n). Deserialization and test fixtures go through
    // here; validate=false skips the bijection check and is test-only.
    static TwistedCube from_tables(int n, CouplingPolicy policy, std::uint64_t seed,
                                   std::vector<std::vector<std::uint32_t>> forward_tables,
                                   bool validate = true);

    friend TwistedCube build(int n, CouplingPolicy policy, std::uint64_t seed,
                             const BuildOptions& opts);

  private:
    TwistedCube(int n, CouplingPolicy policy, std::uint64_t seed,
                std::vector<MatchingLevel> levels)
        : n_(n), policy_(policy), seed_(seed), levels_(std::move(levels)) {}

    int n_ = 1;
    CouplingPolicy policy_ = CouplingPolicy::IdentityMatching;
    std::uint64_t seed_ = 0;
    std::vector<MatchingLevel> levels_;  // index k-2; empty for IdentityMatching
};

namespace detail {

inline std::uint32_t copies_at_level(int n, CouplingPolicy policy, int k) {
    if (policy == CouplingPolicy::IdentityMatching) return 0;
    if (policy == CouplingPolicy::Independent) return std::uint32_t{1} << (n - k);
    return 1;
}

inline void fill_inverse(MatchingLevel& lv) {
    const std::uint32_t half = lv.half_size();
    lv.inverse.assign(lv.forward.size(), 0);
    for (std::uint32_t c = 0; c < lv.copies; ++c) {
        const std::size_t base = static_cast<std::size_t>(c) * half;
        for (std::uint32_t x = 0; x < half; ++x) {
            lv.inverse[base + lv.forward[base + x]] = x;
        }
    }
}

inline void check_bijection(const MatchingLevel& lv) {
    const std::uint32_t half = lv.half_size();
    std::vector<bool> seen(half);
    for (std::uint32_t c = 0; c < lv.copies; ++c) {
        seen.assign(half, false);
        const std::size_t base = static_cast<std::size_t>(c) * half;
        for (std::uint32_t x = 0; x < half; ++x) {
            const std::uint32_t y = lv.forward[base + x];
            if (y >= half || seen[y]) {
                throw std::runtime_error("level " + std::to_string(lv.level) + " copy " +
                                         std::to_string(c) + ": table is not a bijection");
            }
            seen[y] = true;
        }
    }
}

}  // namespace detail

// Seeded construction. Each (level, copy) matching is an unbiased shuffle of
// the identity permutation driven by the stream derive_stream(seed, k, copy),
// so the result is bit-identical for any thread count.
inline TwistedCube build(int n, CouplingPolicy policy, std::uint64_t seed,
                         const BuildOptions& opts = {}) {
    if (n < 1 || n > kMaxDimension) {
        throw std::invalid_argument("dimension out of range: n must be in [1, " +
                                    std::to_string(kMaxDimension) + "], got " + std::to_string(n));
    }
    const std::uint64_t budget = opts.memory_budget ? opts.memory_budget : memory_budget_from_env();
    const std::uint64_t need = table_bytes(n, policy);
    if (need > budget) throw MemoryBudgetError(need, budget);

    std::vector<MatchingLevel> levels;
    if (policy != CouplingPolicy::IdentityMatching && n >= 2) {
        levels.resize(static_cast<std::size_t>(n) - 1);
        for (int k = 2; k <= n; ++k) {
            MatchingLevel& lv = levels[static_cast<std::size_t>(k) - 2];
            lv.level = k;
            lv.copies = detail::copies_at_level(n, policy, k);
            const std::size_t entries = static_cast<std::size_t>(lv.copies) << (k - 1);
            lv.forward.resize(entries);
            lv.inverse.resize(entries);
        }
        for (int k = 2; k <= n; ++k) {
            MatchingLevel& lv = levels[static_cast<std::size_t>(k) - 2];
            const std::uint32_t half = lv.half_size();
            parallel_for(lv.copies, opts.threads, [&](std::uint64_t copy) {
                const std::size_t base = static_cast<std::size_t>(copy) * half;
                std::uint32_t* fwd = lv.forward.data() + base;
                for (std::uint32_t x = 0; x < half; ++x) fwd[x] = x;
                SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(k), copy));
                fisher_yates(fwd, half, rng);
                std::uint32_t* inv = lv.inverse.data() + base;
                for (std::uint32_t x = 0; x < half; ++x) inv[fwd[x]] = x;
            });
        }
    }
    return TwistedCube(n, policy, seed, std::move(levels));
}

inline TwistedCube TwistedCube::from_tables(int n, CouplingPolicy policy, std::uint64_t seed,
                                            std::vector<std::vector<std::uint32_t>> forward_tables,
                                            bool validate) {
    if (n < 1 || n > kMaxDimension) {
        throw std::invalid_argument("dimension out of range: n must be in [1, " +
                                    std::to_string(kMaxDimension) + "], got " + std::to_string(n));
    }
    const std::size_t expected_levels =
        (policy == CouplingPolicy::IdentityMatching || n < 2) ? 0 : static_cast<std::size_t>(n) - 1;
    if (forward_tables.size() != expected_levels) {
        throw std::runtime_error("expected " + std::to_string(expected_levels) +
                                 " level tables, got " + std::to_string(forward_tables.size()));
    }
    std::vector<MatchingLevel> levels(expected_levels);
    for (int k = 2; k <= n && !levels.empty(); ++k) {
        MatchingLevel& lv = levels[static_cast<std::size_t>(k) - 2];
        lv.level = k;
        lv.copies = detail::copies_at_level(n, policy, k);
        lv.forward = std::move(forward_tables[static_cast<std::size_t>(k) - 2]);
        const std::size_t entries = static_cast<std::size_t>(lv.copies) << (k - 1);
        if (lv.forward.size() != entries) {
            throw std::runtime_error("level " + std::to_string(k) + ": expected " +
                                     std::to_string(entries) + " entries, got " +
                                     std::to_string(lv.forward.size()));
        }
        if (validate) detail::check_bijection(lv);
        detail::fill_inverse(lv);
    }
    return TwistedCube(n, policy, seed, std::move(levels));
}

// The induced subgraph on vertices agreeing with u above coordinate k is
// itself a twisted-hypercube instance of dimension k; this extracts it as a
// standalone graph whose label w corresponds to parent label
// (u & ~(2^k-1)) | w.
inline TwistedCube extract_subcube(const TwistedCube& g, VertexLabel u, int k) {
    require_label(u, g.dimension());
    if (k < 1 || k > g.dimension()) {
        throw std::invalid_argument("subcube dimension out of range");
    }
    const CouplingPolicy policy = g.coupling();
    std::vector<std::vector<std::uint32_t>> tables;
    if (policy != CouplingPolicy::IdentityMatching && k >= 2) {
        tables.resize(static_cast<std::size_t>(k) - 1);
        for (int j = 2; j <= k; ++j) {
            const MatchingLevel& src = g.level(j);
            const std::uint32_t half = src.half_size();
            const std::uint32_t sub_copies = detail::copies_at_level(k, policy, j);
            std::vector<std::uint32_t> fwd(static_cast<std::size_t>(sub_copies) * half);
            for (std::uint32_t c = 0; c < sub_copies; ++c) {
                std::uint64_t global_copy = c;
                if (policy == CouplingPolicy::Independent) {
                    global_copy = (static_cast<std::uint64_t>(u >> k) << (k - j)) | c;
                }
                const std::size_t src_base = static_cast<std::size_t>(global_copy) * half;
                const std::size_t dst_base = static_cast<std::size_t>(c) * half;
                for (std::uint32_t x = 0; x < half; ++x) {
                    fwd[dst_base + x] = src.forward[src_base + x];
                }
            }
            tables[static_cast<std::size_t>(j) - 2] = std::move(fwd);
        }
    }
    return TwistedCube::from_tables(k, policy, g.seed(), std::move(tables), true);
}

}  // namespace twistcube
