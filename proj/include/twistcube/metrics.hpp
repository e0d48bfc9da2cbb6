#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <optional>
#include <vector>

#include "twistcube/errors.hpp"
#include "twistcube/graph.hpp"
#include "twistcube/parallel.hpp"
#include "twistcube/routing.hpp"

namespace twistcube {

inline constexpr std::uint8_t kUnreached = 0xff;

namespace detail {

struct BfsScratch {
    std::vector<std::uint8_t> dist;
    std::vector<VertexLabel> cur;
    std::vector<VertexLabel> nxt;

    void prepare(std::uint64_t nv) {
        dist.resize(nv);
        cur.reserve(nv);
        nxt.reserve(nv);
    }
};

// Full single-source BFS; fills scratch.dist with exact distances.
inline void bfs_fill(const TwistedCube& g, VertexLabel source, BfsScratch& scratch) {
    const std::uint64_t nv = g.num_vertices();
    const int n = g.dimension();
    scratch.prepare(nv);
    std::memset(scratch.dist.data(), kUnreached, nv);
    scratch.cur.clear();
    scratch.nxt.clear();
    scratch.dist[source] = 0;
    scratch.cur.push_back(source);
    std::uint8_t d = 0;
    while (!scratch.cur.empty()) {
        ++d;
        for (const VertexLabel x : scratch.cur) {
            for (int k = 1; k <= n; ++k) {
                const VertexLabel y = g.neighbor_unchecked(x, k);
                if (scratch.dist[y] == kUnreached) {
                    scratch.dist[y] = d;
                    scratch.nxt.push_back(y);
                }
            }
        }
        scratch.cur.swap(scratch.nxt);
        scratch.nxt.clear();
    }
}

// (eccentricity, smallest farthest vertex) of the filled distance array.
inline std::pair<int, VertexLabel> ecc_and_farthest(const std::vector<std::uint8_t>& dist) {
    int ecc = 0;
    VertexLabel far = 0;
    for (std::uint64_t v = 0; v < dist.size(); ++v) {
        if (dist[v] != kUnreached && dist[v] > ecc) {
            ecc = dist[v];
            far = static_cast<VertexLabel>(v);
        }
    }
    return {ecc, far};
}

}  // namespace detail

inline std::vector<std::uint8_t> bfs_distances(const TwistedCube& g, VertexLabel source) {
    require_label(source, g.dimension(), "source");
    detail::BfsScratch scratch;
    detail::bfs_fill(g, source, scratch);
    return std::move(scratch.dist);
}

inline int eccentricity(const TwistedCube& g, VertexLabel v) {
    const auto dist = bfs_distances(g, v);
    return detail::ecc_and_farthest(dist).first;
}

inline std::uint64_t ball_size(const TwistedCube& g, VertexLabel v, int t) {
    if (t < 0) throw std::invalid_argument("ball radius must be >= 0");
    return ball_bfs(g, v, t, g.dimension() + 1).size();
}

struct ExactDiameterOptions {
    int cap = 16;  // largest n the all-pairs sweep will accept
    unsigned threads = 0;
};

// All-pairs BFS, parallel over sources with per-worker scratch.
inline int exact_diameter(const TwistedCube& g, const ExactDiameterOptions& opts = {}) {
    if (g.dimension() > opts.cap) {
        throw ResourceError("exact diameter capped at n <= " + std::to_string(opts.cap) +
                            " (got n = " + std::to_string(g.dimension()) +
                            "); use sampled diameter bounds instead");
    }
    const std::uint64_t nv = g.num_vertices();
    const unsigned threads = resolve_threads(opts.threads);
    std::vector<int> worker_max(threads, 0);
    parallel_chunks(nv, threads, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        detail::BfsScratch scratch;
        int local = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            detail::bfs_fill(g, static_cast<VertexLabel>(s), scratch);
            const int ecc = detail::ecc_and_farthest(scratch.dist).first;
            if (ecc > local) local = ecc;
        }
        worker_max[worker] = local;
    });
    int diameter = 0;
    for (const int m : worker_max) diameter = std::max(diameter, m);
    return diameter;
}

enum class DiameterMethod { AllPairs, SampledSweep };

inline const char* method_name(DiameterMethod m) {
    return m == DiameterMethod::AllPairs ? "AllPairs" : "SampledSweep";
}

struct DiameterReport {
    int n = 0;
    CouplingPolicy policy = CouplingPolicy::IdentityMatching;
    std::uint64_t seed = 0;
    std::optional<int> exact;
    int lower_bound = 0;
    int upper_bound = 0;  // SampledSweep: heuristic route-length statistic capped at n
    DiameterMethod method = DiameterMethod::AllPairs;
    std::uint64_t samples = 0;
    double wall_time_s = 0.0;
};

inline DiameterReport measure_diameter_exact(const TwistedCube& g,
                                             const ExactDiameterOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int d = exact_diameter(g, opts);
    const auto t1 = std::chrono::steady_clock::now();
    DiameterReport r;
    r.n = g.dimension();
    r.policy = g.coupling();
    r.seed = g.seed();
    r.exact = d;
    r.lower_bound = d;
    r.upper_bound = d;
    r.method = DiameterMethod::AllPairs;
    r.samples = g.num_vertices();
    r.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

struct SampleOptions {
    std::uint64_t num_sources = 16;
    std::uint64_t num_pairs = 256;
    std::uint64_t seed = 1;  // sampling stream seed, independent of the graph seed
    int double_sweeps = 4;
    unsigned threads = 0;
    std::optional<RouterParams> router;  // nullopt = defaults for n
};

// Sampled bounds: lower from max eccentricity over random sources plus a
// double-sweep chain (restart from the farthest vertex found); upper from the
// longest sampled route, a heuristic statistic combined with the hard bound n.
inline DiameterReport diameter_bounds_sampled(const TwistedCube& g, const SampleOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nv = g.num_vertices();
    const int n = g.dimension();
    SplitMix64 rng(derive_stream(opts.seed, 0xd1a7u));

    std::vector<VertexLabel> sources;
    sources.reserve(opts.num_sources);
    for (std::uint64_t i = 0; i < opts.num_sources; ++i) {
        sources.push_back(static_cast<VertexLabel>(rng.bounded(nv)));
    }

    const unsigned threads = resolve_threads(opts.threads);
    struct WorkerBest {
        int ecc = -1;
        std::uint64_t source_rank = ~std::uint64_t{0};
        VertexLabel farthest = 0;
    };
    std::vector<WorkerBest> best(threads);
    parallel_chunks(sources.size(), threads, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        detail::BfsScratch scratch;
        WorkerBest local;
        for (std::uint64_t i = begin; i < end; ++i) {
            detail::bfs_fill(g, sources[i], scratch);
            const auto [ecc, far] = detail::ecc_and_farthest(scratch.dist);
            if (ecc > local.ecc || (ecc == local.ecc && i < local.source_rank)) {
                local = {ecc, i, far};
            }
        }
        best[worker] = local;
    });
    WorkerBest overall;
    for (const auto& b : best) {
        if (b.ecc > overall.ecc || (b.ecc == overall.ecc && b.source_rank < overall.source_rank)) {
            overall = b;
        }
    }
    int lower = std::max(0, overall.ecc);

    // Double-sweep refinement from the farthest vertex of the best run.
    detail::BfsScratch scratch;
    VertexLabel restart = overall.farthest;
    for (int i = 0; i < opts.double_sweeps && !sources.empty(); ++i) {
        detail::bfs_fill(g, restart, scratch);
        const auto [ecc, far] = detail::ecc_and_farthest(scratch.dist);
        if (ecc > lower) lower = ecc;
        restart = far;
    }

    const RouterParams params = opts.router ? *opts.router : RouterParams::defaults_for(n);
    int max_route = 0;
    for (std::uint64_t i = 0; i < opts.num_pairs; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(nv));
        const auto v = static_cast<VertexLabel>(rng.bounded(nv));
        const Path p = twist_route(g, u, v, params);
        max_route = std::max(max_route, static_cast<int>(p.length()));
    }

    const auto t1 = std::chrono::steady_clock::now();
    DiameterReport r;
    r.n = n;
    r.policy = g.coupling();
    r.seed = g.seed();
    r.lower_bound = lower;
    r.upper_bound = std::min(n, std::max(lower, max_route));
    r.method = DiameterMethod::SampledSweep;
    r.samples = opts.num_sources + opts.num_pairs;
    r.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

}  // namespace twistcube
