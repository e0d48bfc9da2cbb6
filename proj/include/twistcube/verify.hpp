#pragma once

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "twistcube/errors.hpp"
#include "twistcube/graph.hpp"
#include "twistcube/math_util.hpp"
#include "twistcube/metrics.hpp"
#include "twistcube/parallel.hpp"
#include "twistcube/routing.hpp"

namespace twistcube {

// Result of one executable check. A check never throws on a violated
// property; it collects witnesses instead (a failure would indicate a
// construction bug, and the witness pinpoints it).
struct CheckReport {
    std::string name;
    int n = 0;
    CouplingPolicy policy = CouplingPolicy::IdentityMatching;
    std::uint64_t seed = 0;
    std::string scope;  // "exhaustive" or "sampled"
    std::uint64_t checked = 0;
    std::uint64_t failure_count = 0;
    std::vector<std::string> failures;  // first few witnesses; failure_count has the total

    bool passed() const { return failure_count == 0; }
};

namespace detail {

inline constexpr std::size_t kMaxWitnesses = 16;

inline void add_failure(CheckReport& r, std::string witness) {
    ++r.failure_count;
    if (r.failures.size() < kMaxWitnesses) r.failures.push_back(std::move(witness));
}

inline void merge_into(CheckReport& into, const CheckReport& part) {
    into.checked += part.checked;
    into.failure_count += part.failure_count;
    for (const auto& w : part.failures) {
        if (into.failures.size() >= kMaxWitnesses) break;
        into.failures.push_back(w);
    }
}

inline CheckReport report_for(const TwistedCube& g, std::string name) {
    CheckReport r;
    r.name = std::move(name);
    r.n = g.dimension();
    r.policy = g.coupling();
    r.seed = g.seed();
    return r;
}

// Design cutoff: run exhaustively when the assertion count stays within 2^24.
inline bool exhaustive_ok(std::uint64_t total_checks) { return total_checks <= (1u << 24); }

inline std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

}  // namespace detail

// Matchings are involutions: eta_k(eta_k(v)) = v, eta_k(v) differs from v at
// coordinate k and agrees above it, and the n neighbors of v are distinct and
// never v itself. Exhaustive while n*2^n stays within the cutoff.
inline CheckReport check_matching_involution(const TwistedCube& g,
                                             std::uint64_t sample_vertices = 65536,
                                             std::uint64_t sample_seed = 1,
                                             unsigned threads = 0) {
    CheckReport report = detail::report_for(g, "involution");
    const int n = g.dimension();
    const std::uint64_t nv = g.num_vertices();
    const bool exhaustive = detail::exhaustive_ok(nv * static_cast<std::uint64_t>(n));
    report.scope = exhaustive ? "exhaustive" : "sampled";

    const std::uint64_t count = exhaustive ? nv : std::min<std::uint64_t>(sample_vertices, nv);
    const unsigned workers = resolve_threads(threads);
    std::vector<CheckReport> parts(workers);
    parallel_chunks(count, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        CheckReport& part = parts[w];
        std::vector<VertexLabel> nbrs(static_cast<std::size_t>(n));
        for (std::uint64_t i = begin; i < end; ++i) {
            // Sampled vertices are derived per index, not per worker, so the
            // checked set does not depend on the thread count.
            const VertexLabel v =
                exhaustive ? static_cast<VertexLabel>(i)
                           : static_cast<VertexLabel>(
                                 SplitMix64(derive_stream(sample_seed, 0x1417u, i)).bounded(nv));
            for (int k = 1; k <= n; ++k) {
                const VertexLabel w1 = g.neighbor_unchecked(v, k);
                nbrs[static_cast<std::size_t>(k) - 1] = w1;
                ++part.checked;
                if (g.neighbor_unchecked(w1, k) != v) {
                    detail::add_failure(part, detail::fmt("v=%u k=%d: eta_k(eta_k(v))=%u != v",
                                                          v, k, g.neighbor_unchecked(w1, k)));
                }
                if (alpha(w1, v) != k) {
                    detail::add_failure(part, detail::fmt("v=%u k=%d: neighbor %u differs at "
                                                          "coordinate %d, expected %d",
                                                          v, k, w1, alpha(w1, v), k));
                }
            }
            ++part.checked;
            std::sort(nbrs.begin(), nbrs.end());
            bool distinct = std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end();
            bool self = std::binary_search(nbrs.begin(), nbrs.end(), v);
            if (!distinct || self) {
                detail::add_failure(part, detail::fmt("v=%u: neighbor list %s", v,
                                                      self ? "contains v" : "has duplicates"));
            }
        }
    });
    for (const auto& part : parts) detail::merge_into(report, part);
    return report;
}

// Closed balls are never small: |B(v,t)| >= binom(n+1, t) for every vertex
// and radius. Exhaustive over vertices for small n, sampled otherwise.
inline CheckReport check_ball_lower_bound(const TwistedCube& g, int t_max,
                                          std::uint64_t sample_vertices = 1024,
                                          std::uint64_t sample_seed = 1,
                                          unsigned threads = 0) {
    if (t_max < 0 || t_max > g.dimension()) {
        throw std::invalid_argument("t_max must be in [0, n]");
    }
    CheckReport report = detail::report_for(g, "ball_lower_bound");
    const int n = g.dimension();
    const std::uint64_t nv = g.num_vertices();
    const bool exhaustive = nv <= 4096;
    report.scope = exhaustive ? "exhaustive" : "sampled";
    const std::uint64_t count = exhaustive ? nv : std::min<std::uint64_t>(sample_vertices, nv);

    const unsigned workers = resolve_threads(threads);
    std::vector<CheckReport> parts(workers);
    parallel_chunks(count, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        CheckReport& part = parts[w];
        std::vector<std::uint64_t> by_dist(static_cast<std::size_t>(t_max) + 1);
        for (std::uint64_t i = begin; i < end; ++i) {
            const VertexLabel v =
                exhaustive ? static_cast<VertexLabel>(i)
                           : static_cast<VertexLabel>(
                                 SplitMix64(derive_stream(sample_seed, 0xba11u, i)).bounded(nv));
            const Ball ball = ball_bfs(g, v, t_max, n + 1);
            std::fill(by_dist.begin(), by_dist.end(), 0);
            for (const auto& e : ball.entries()) ++by_dist[static_cast<std::size_t>(e.dist)];
            std::uint64_t cumulative = 0;
            for (int t = 0; t <= t_max; ++t) {
                cumulative += by_dist[static_cast<std::size_t>(t)];
                ++part.checked;
                const std::uint64_t required = binomial(n + 1, t);
                if (cumulative < required) {
                    detail::add_failure(part, detail::fmt("v=%u t=%d: |B|=%llu < C(%d,%d)=%llu", v, t,
                                                          static_cast<unsigned long long>(cumulative),
                                                          n + 1, t,
                                                          static_cast<unsigned long long>(required)));
                }
            }
        }
    });
    for (const auto& part : parts) detail::merge_into(report, part);
    return report;
}

// Enumerates every strictly decreasing level sequence a_1 > ... > a_s (s <= t)
// and applies eta_{a_1}, ..., eta_{a_s} to v in that order. The images must be
// pairwise distinct, lie within distance t of v, and satisfy the recovery
// identity alpha(v, image) = a_1.
inline CheckReport check_injectivity(const TwistedCube& g, VertexLabel v, int t) {
    require_label(v, g.dimension());
    const int n = g.dimension();
    if (t < 0 || t > n) throw std::invalid_argument("t must be in [0, n]");
    std::uint64_t expected = 0;
    for (int s = 0; s <= t; ++s) expected += binomial(n, s);
    if (!detail::exhaustive_ok(expected)) {
        throw ResourceError("injectivity enumeration too large: " + std::to_string(expected) +
                            " sequences");
    }

    CheckReport report = detail::report_for(g, "injectivity");
    report.scope = "exhaustive";

    const Ball reach = ball_bfs(g, v, t, n + 1);
    std::vector<VertexLabel> images;
    images.reserve(expected);
    images.push_back(v);  // the empty sequence
    ++report.checked;

    // DFS over decreasing sequences; a1 stays fixed for the whole subtree.
    struct Frame {
        VertexLabel vertex;
        int next_below;
        int depth;
    };
    for (int a1 = n; a1 >= 1 && t >= 1; --a1) {
        std::vector<Frame> stack;
        stack.push_back({g.neighbor_unchecked(v, a1), a1, 1});
        while (!stack.empty()) {
            const Frame f = stack.back();
            stack.pop_back();
            images.push_back(f.vertex);
            ++report.checked;
            if (alpha(v, f.vertex) != a1) {
                detail::add_failure(report,
                                    detail::fmt("a1=%d image=%u: alpha(v,image)=%d, expected a1",
                                                a1, f.vertex, alpha(v, f.vertex)));
            }
            if (!reach.contains(f.vertex)) {
                detail::add_failure(report, detail::fmt("image %u not within distance %d of v=%u",
                                                        f.vertex, t, v));
            }
            if (f.depth < t) {
                for (int a = 1; a < f.next_below; ++a) {
                    stack.push_back({g.neighbor_unchecked(f.vertex, a), a, f.depth + 1});
                }
            }
        }
    }

    if (images.size() != expected) {
        detail::add_failure(report, detail::fmt("enumerated %zu sequences, expected %llu",
                                                images.size(),
                                                static_cast<unsigned long long>(expected)));
    }
    std::sort(images.begin(), images.end());
    const auto dup = std::adjacent_find(images.begin(), images.end());
    if (dup != images.end()) {
        detail::add_failure(report, detail::fmt("duplicate image %u: map is not injective", *dup));
    }
    return report;
}

// |{w : alpha(w, v) <= k}| = 2^k, counted through the alpha function itself.
inline CheckReport check_subcube_size(const TwistedCube& g, VertexLabel v, int k) {
    require_label(v, g.dimension());
    if (k < 0 || k > g.dimension()) throw std::invalid_argument("k must be in [0, n]");
    CheckReport report = detail::report_for(g, "subcube_size");
    report.scope = "exhaustive";
    const std::uint64_t nv = g.num_vertices();
    std::uint64_t count = 0;
    for (std::uint64_t w = 0; w < nv; ++w) {
        if (alpha(static_cast<VertexLabel>(w), v) <= k) ++count;
    }
    ++report.checked;
    const std::uint64_t expected = std::uint64_t{1} << k;
    if (count != expected) {
        detail::add_failure(report, detail::fmt("v=%u k=%d: count=%llu, expected 2^%d=%llu", v, k,
                                                static_cast<unsigned long long>(count), k,
                                                static_cast<unsigned long long>(expected)));
    }
    return report;
}

// Subcube counts for all (v, k) in one pass per vertex, via an alpha histogram.
inline CheckReport check_subcube_counts(const TwistedCube& g, std::uint64_t sample_vertices = 256,
                                        std::uint64_t sample_seed = 1, unsigned threads = 0) {
    CheckReport report = detail::report_for(g, "subcube_size");
    const int n = g.dimension();
    const std::uint64_t nv = g.num_vertices();
    const bool exhaustive = detail::exhaustive_ok(nv * nv);
    report.scope = exhaustive ? "exhaustive" : "sampled";
    const std::uint64_t count = exhaustive ? nv : std::min<std::uint64_t>(sample_vertices, nv);

    const unsigned workers = resolve_threads(threads);
    std::vector<CheckReport> parts(workers);
    parallel_chunks(count, workers, [&](unsigned wk, std::uint64_t begin, std::uint64_t end) {
        CheckReport& part = parts[wk];
        std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1);
        for (std::uint64_t i = begin; i < end; ++i) {
            const VertexLabel v =
                exhaustive ? static_cast<VertexLabel>(i)
                           : static_cast<VertexLabel>(
                                 SplitMix64(derive_stream(sample_seed, 0x5c0bu, i)).bounded(nv));
            std::fill(hist.begin(), hist.end(), 0);
            for (std::uint64_t w = 0; w < nv; ++w) {
                ++hist[static_cast<std::size_t>(alpha(static_cast<VertexLabel>(w), v))];
            }
            std::uint64_t cumulative = 0;
            for (int k = 0; k <= n; ++k) {
                cumulative += hist[static_cast<std::size_t>(k)];
                ++part.checked;
                if (cumulative != (std::uint64_t{1} << k)) {
                    detail::add_failure(part,
                                        detail::fmt("v=%u k=%d: count=%llu, expected 2^%d", v, k,
                                                    static_cast<unsigned long long>(cumulative), k));
                }
            }
        }
    });
    for (const auto& part : parts) detail::merge_into(report, part);
    return report;
}

// Per-pair record of the quasirandomness estimate.
struct QuasiSample {
    VertexLabel u = 0;
    VertexLabel v = 0;
    std::uint32_t ball = 0;
    int min_alpha = 0;
    bool ok = false;
    double pair_bound = 0.0;
};

struct QuasirandomnessReport {
    int n = 0;
    CouplingPolicy policy = CouplingPolicy::IdentityMatching;
    std::uint64_t seed = 0;  // graph seed
    int k = 0;
    int t = 0;
    int drop = 0;       // required alpha decrease, max(1, ceil((t-2)*log2 k))
    int threshold = 0;  // k - drop
    std::uint64_t pairs = 0;
    std::uint64_t failures = 0;
    double failure_frequency = 0.0;
    bool bound_valid = false;   // the per-pair bound formula needs t >= 3
    double mean_pair_bound = 0.0;
    double mean_ball = 0.0;
    std::uint32_t min_ball = 0;
    std::uint32_t max_ball = 0;
    bool regime_warning = false;  // k outside the regime the estimate targets
    std::vector<QuasiSample> samples;
};

// Samples pairs (u, v) with alpha(u, v) = k (u uniform, the k-1 low
// coordinates of v uniform) and measures how often no vertex w within
// distance t of u inside u's level-(k-1) subcube has
// alpha(eta_k(w), v) <= k - drop. The reported frequency is the empirical
// rate of the failure event; the per-pair bound (1 - k^-(t-2))^|B'| is
// recorded alongside for comparison.
inline QuasirandomnessReport estimate_quasirandomness(const TwistedCube& g, int k, int t,
                                                      std::uint64_t num_pairs, std::uint64_t seed,
                                                      unsigned threads = 0) {
    const int n = g.dimension();
    if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");
    if (t < 1) throw std::invalid_argument("t must be >= 1");

    QuasirandomnessReport report;
    report.n = n;
    report.policy = g.coupling();
    report.seed = g.seed();
    report.k = k;
    report.t = t;
    report.pairs = num_pairs;
    const double raw_drop = (t - 2) * std::log2(static_cast<double>(k));
    report.drop = std::max(1, static_cast<int>(std::ceil(raw_drop)));
    report.threshold = k - report.drop;
    report.bound_valid = t >= 3;

    const double lg = std::log2(static_cast<double>(n));
    const double k_floor = n > 1 ? static_cast<double>(n) / (lg * lg) : 1.0;
    double regime_t = 4.0;
    for (int i = 0; i < 2 * t; ++i) regime_t *= t;  // 4 t^{2t}, saturates quickly
    report.regime_warning = static_cast<double>(k) < k_floor || regime_t > static_cast<double>(k);

    report.samples.resize(num_pairs);
    const VertexLabel kbit = VertexLabel{1} << (k - 1);
    const std::uint64_t low_size = std::uint64_t{1} << (k - 1);
    parallel_for(num_pairs, threads, [&](std::uint64_t i) {
        SplitMix64 rng(derive_stream(seed, 0x9a51u, i));
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const VertexLabel base = (u ^ kbit) & ~static_cast<VertexLabel>(low_size - 1);
        const VertexLabel v = base | static_cast<VertexLabel>(rng.bounded(low_size));
        const Ball ball = ball_bfs(g, u, t, k);
        int min_alpha = n + 1;
        for (const auto& e : ball.entries()) {
            min_alpha = std::min(min_alpha, alpha(g.neighbor_unchecked(e.vertex, k), v));
        }
        QuasiSample& s = report.samples[i];
        s.u = u;
        s.v = v;
        s.ball = static_cast<std::uint32_t>(ball.size());
        s.min_alpha = min_alpha;
        // Reaching alpha = 0 (the matched partner is v itself) always counts,
        // even in the vacuous regime where the required drop exceeds k.
        s.ok = min_alpha <= report.threshold || min_alpha == 0;
        s.pair_bound = report.bound_valid
                           ? std::pow(1.0 - std::pow(static_cast<double>(k), -(t - 2)),
                                      static_cast<double>(ball.size()))
                           : 0.0;
    });

    double bound_sum = 0.0;
    double ball_sum = 0.0;
    report.min_ball = num_pairs ? report.samples[0].ball : 0;
    report.max_ball = report.min_ball;
    for (const QuasiSample& s : report.samples) {
        if (!s.ok) ++report.failures;
        bound_sum += s.pair_bound;
        ball_sum += s.ball;
        report.min_ball = std::min(report.min_ball, s.ball);
        report.max_ball = std::max(report.max_ball, s.ball);
    }
    if (num_pairs > 0) {
        report.failure_frequency =
            static_cast<double>(report.failures) / static_cast<double>(num_pairs);
        report.mean_pair_bound = bound_sum / static_cast<double>(num_pairs);
        report.mean_ball = ball_sum / static_cast<double>(num_pairs);
    }
    return report;
}

// In an n-regular graph at most min(2^n, 2 n^d) vertices sit within distance
// d of anything, so the diameter is at least ceil((n-1)/log2 n).
inline bool check_diameter_lower_bound(int n, int diameter) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    return diameter >= diameter_lower_bound(n);
}

}  // namespace twistcube
