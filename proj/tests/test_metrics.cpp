#include <doctest.h>

#include <bit>

#include "twistcube/math_util.hpp"
#include "twistcube/metrics.hpp"
#include "twistcube/verify.hpp"

using namespace twistcube;

TEST_CASE("bfs distances on the single edge") {
    const TwistedCube g = build(1, CouplingPolicy::Duplicube, 1);
    CHECK(bfs_distances(g, 0) == std::vector<std::uint8_t>{0, 1});
    CHECK(eccentricity(g, 0) == 1);
    CHECK(exact_diameter(g) == 1);
}

TEST_CASE("bfs distances never exceed alpha") {
    const TwistedCube g = build(10, CouplingPolicy::Duplicube, 5);
    const VertexLabel src = 333;
    const auto dist = bfs_distances(g, src);
    for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
        REQUIRE(dist[v] <= alpha(src, static_cast<VertexLabel>(v)));
    }
}

TEST_CASE("identity distances are Hamming distances") {
    const TwistedCube g = build(10, CouplingPolicy::IdentityMatching, 1);
    const VertexLabel src = 682;
    const auto dist = bfs_distances(g, src);
    for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
        REQUIRE(dist[v] == std::popcount(src ^ static_cast<VertexLabel>(v)));
    }
    CHECK(eccentricity(g, src) == 10);
}

TEST_CASE("eccentricity stays within n") {
    for (auto policy : {CouplingPolicy::Independent, CouplingPolicy::Duplicube}) {
        const TwistedCube g = build(10, policy, 2);
        SplitMix64 rng(3);
        for (int i = 0; i < 12; ++i) {
            const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
            const int ecc = eccentricity(g, v);
            CHECK(ecc >= 1);
            CHECK(ecc <= 10);
        }
    }
}

TEST_CASE("hypercube diameters are exactly n") {
    for (const int n : {2, 5, 9, 12}) {
        const TwistedCube g = build(n, CouplingPolicy::IdentityMatching, 1);
        CHECK(exact_diameter(g) == n);
    }
}

TEST_CASE("random-policy diameter satisfies the sandwich at n=10") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const TwistedCube g = build(10, CouplingPolicy::Independent, seed);
        const int d = exact_diameter(g);
        CHECK(d >= diameter_lower_bound(10));  // ceil(9/log2 10) = 3
        CHECK(d <= 10);
        CHECK(check_diameter_lower_bound(10, d));
    }
}

TEST_CASE("exact diameter respects the cap") {
    const TwistedCube g = build(10, CouplingPolicy::Duplicube, 1);
    ExactDiameterOptions opts;
    opts.cap = 9;
    CHECK_THROWS_AS(exact_diameter(g, opts), ResourceError);
}

TEST_CASE("exact diameter is thread-count independent") {
    const TwistedCube g = build(9, CouplingPolicy::Independent, 8);
    ExactDiameterOptions one;
    one.threads = 1;
    ExactDiameterOptions many;
    many.threads = 5;
    CHECK(exact_diameter(g, one) == exact_diameter(g, many));
}

TEST_CASE("ball sizes") {
    const TwistedCube g5 = build(5, CouplingPolicy::Duplicube, 6);
    CHECK(ball_size(g5, 7, 0) == 1);
    CHECK(ball_size(g5, 7, 1) == 6);       // center + n neighbors
    CHECK(ball_size(g5, 7, 2) >= 15);      // binom(6,2)
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("sampled bounds with dense sources recover the exact diameter") {
    const TwistedCube g = build(6, CouplingPolicy::Independent, 4);
    SampleOptions opts;
    opts.num_sources = 4096;  // draws cover all 64 vertices with this seed
    opts.num_pairs = 64;
    opts.seed = 12;
    const DiameterReport r = diameter_bounds_sampled(g, opts);
    const int exact = exact_diameter(g);
    CHECK(r.lower_bound == exact);
    CHECK(r.upper_bound >= r.lower_bound);
    CHECK(r.upper_bound <= 6);
    CHECK(r.method == DiameterMethod::SampledSweep);
}

TEST_CASE("double sweep finds the hypercube antipode from one source") {
    const TwistedCube g = build(10, CouplingPolicy::IdentityMatching, 1);
    SampleOptions opts;
    opts.num_sources = 1;
    opts.num_pairs = 16;
    opts.seed = 5;
    const DiameterReport r = diameter_bounds_sampled(g, opts);
    CHECK(r.lower_bound == 10);
    CHECK(r.upper_bound == 10);
}

TEST_CASE("sampled lower bound at n=20 clears the counting bound") {
    const TwistedCube g = build(20, CouplingPolicy::Duplicube, 7);
    SampleOptions opts;
    opts.num_sources = 8;
    opts.num_pairs = 100;
    opts.seed = 3;
    const DiameterReport r = diameter_bounds_sampled(g, opts);
    CHECK(r.lower_bound >= 5);  // ceil(19/log2 20)
    CHECK(diameter_lower_bound(20) == 5);
    CHECK(r.lower_bound <= r.upper_bound);
    CHECK(r.upper_bound <= 20);
    CHECK(!r.exact.has_value());
}

TEST_CASE("distance symmetry and triangle inequality on sampled tuples") {
    const TwistedCube g = build(10, CouplingPolicy::Independent, 13);
    SplitMix64 rng(14);
    for (int i = 0; i < 8; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto w = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto du = bfs_distances(g, u);
        const auto dv = bfs_distances(g, v);
        REQUIRE(du[v] == dv[u]);
        REQUIRE(du[w] <= du[v] + dv[w]);
    }
}

TEST_CASE("greedy dominance, exhaustive at n=10") {
    // d(u,v) <= greedy length <= alpha(u,v) for every pair.
    const TwistedCube g = build(10, CouplingPolicy::Duplicube, 9);
    detail::BfsScratch scratch;
    for (VertexLabel u = 0; u < g.num_vertices(); ++u) {
        detail::bfs_fill(g, u, scratch);
        for (VertexLabel v = 0; v < g.num_vertices(); ++v) {
            // Lean greedy walk; greedy_route's Path allocation would dominate.
            int len = 0;
            VertexLabel cur = u;
            while (cur != v) {
                cur = g.neighbor_unchecked(cur, alpha(cur, v));
                ++len;
            }
            REQUIRE(scratch.dist[v] <= len);
            REQUIRE(len <= alpha(u, v));
        }
    }
}

TEST_CASE("diameter lower bound arithmetic") {
    CHECK(diameter_lower_bound(10) == 3);   // ceil(9/log2 10)
    CHECK(diameter_lower_bound(16) == 4);   // ceil(15/4)
    CHECK(diameter_lower_bound(4) == 2);    // ceil(3/2)
    CHECK(diameter_lower_bound(2) == 1);
    CHECK(check_diameter_lower_bound(10, 3));
    CHECK(check_diameter_lower_bound(4, 4));
    CHECK_FALSE(check_diameter_lower_bound(16, 3));

    CHECK(reachable_within(10, 0) == 2);
    CHECK(reachable_within(10, 1) == 20);
    CHECK(reachable_within(10, 2) == 200);
    CHECK(reachable_within(10, 3) == 1024);  // clamped at 2^10
    CHECK(reachable_within(4, 2) == 16);     // clamped at 2^4
}
