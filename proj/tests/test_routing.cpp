#include <doctest.h>

#include <bit>

#include "twistcube/metrics.hpp"
#include "twistcube/routing.hpp"

using namespace twistcube;

TEST_CASE("greedy route from a vertex to itself is empty") {
    const TwistedCube g = build(6, CouplingPolicy::Independent, 1);
    const Path p = greedy_route(g, 13, 13);
    CHECK(p.length() == 0);
    CHECK(p.vertices == std::vector<VertexLabel>{13});
    CHECK(validate_path(g, p, 13, 13));
}

TEST_CASE("greedy route on the hypercube flips differing coordinates top-down") {
    const TwistedCube g = build(4, CouplingPolicy::IdentityMatching, 1);
    const Path p = greedy_route(g, 0b0000, 0b1011);
    CHECK(p.length() == 3);
    CHECK(p.levels == std::vector<int>{4, 2, 1});
    CHECK(validate_path(g, p, 0b0000, 0b1011));
}

TEST_CASE("greedy route: length bounded by alpha; alpha strictly decreases") {
    const TwistedCube g = build(12, CouplingPolicy::Independent, 17);
    SplitMix64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const Path p = greedy_route(g, u, v);
        REQUIRE(p.length() <= static_cast<std::size_t>(alpha(u, v)));
        REQUIRE(validate_path(g, p, u, v));
        int prev = alpha(u, v) + 1;
        for (const VertexLabel w : p.vertices) {
            const int a = alpha(w, v);
            REQUIRE(a < prev);
            prev = a;
        }
    }
}

TEST_CASE("greedy route length equals Hamming distance with identity matchings") {
    const TwistedCube g = build(10, CouplingPolicy::IdentityMatching, 1);
    SplitMix64 rng(6);
    for (int i = 0; i < 300; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        CHECK(greedy_route(g, u, v).length() == static_cast<std::size_t>(std::popcount(u ^ v)));
    }
}

TEST_CASE("ball_bfs: radius 0 and radius 1") {
    const TwistedCube g = build(8, CouplingPolicy::Duplicube, 4);
    const Ball b0 = ball_bfs(g, 100, 0, 9);
    CHECK(b0.size() == 1);
    CHECK(b0.entries()[0].vertex == 100);
    CHECK(b0.distance(100) == 0);

    const Ball b1 = ball_bfs(g, 100, 1, 9);
    CHECK(b1.size() == 9);  // center plus its 8 neighbors
    for (const VertexLabel w : g.neighbors(100)) {
        CHECK(b1.contains(w));
        CHECK(b1.distance(w) == 1);
    }
}

TEST_CASE("ball_bfs distances agree with full BFS") {
    const TwistedCube g = build(8, CouplingPolicy::Independent, 9);
    const VertexLabel center = 77;
    const auto dist = bfs_distances(g, center);
    const Ball ball = ball_bfs(g, center, 3, g.dimension() + 1);
    std::size_t within = 0;
    for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
        if (dist[v] <= 3) ++within;
    }
    CHECK(ball.size() == within);
    for (const auto& e : ball.entries()) {
        REQUIRE(e.dist == dist[e.vertex]);
    }
}

TEST_CASE("ball_bfs with a level cap stays inside the subcube") {
    const TwistedCube g = build(12, CouplingPolicy::Independent, 30);
    SplitMix64 rng(7);
    const int cap = 6;
    for (int i = 0; i < 20; ++i) {
        const auto center = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const Ball ball = ball_bfs(g, center, 3, cap);
        for (const auto& e : ball.entries()) {
            // Coordinates >= cap (bits >= cap-1) match the center.
            REQUIRE((e.vertex >> (cap - 1)) == (center >> (cap - 1)));
        }
    }
}

TEST_CASE("ball tree paths are real paths") {
    const TwistedCube g = build(10, CouplingPolicy::Duplicube, 8);
    const Ball ball = ball_bfs(g, 37, 3, g.dimension() + 1);
    for (const auto& e : ball.entries()) {
        VertexLabel cur = 37;
        const auto hops = ball.hops_to(e.vertex);
        CHECK(hops.size() == static_cast<std::size_t>(e.dist));
        for (const auto& [level, vertex] : hops) {
            cur = g.neighbor(cur, level);
            REQUIRE(cur == vertex);
        }
        REQUIRE(cur == e.vertex);
    }
}

TEST_CASE("twist route from a vertex to itself is empty") {
    const TwistedCube g = build(8, CouplingPolicy::Independent, 2);
    const Path p = twist_route(g, 5, 5, RouterParams{3, 2});
    CHECK(p.length() == 0);
    CHECK(p.phases == 0);
    CHECK(p.alpha_trace.empty());
}

TEST_CASE("twist route with n0 = n+1 degenerates to the greedy route") {
    const TwistedCube g = build(10, CouplingPolicy::Independent, 77);
    SplitMix64 rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        RouterParams params;
        params.t = 1 + static_cast<int>(rng.bounded(4));
        params.n0 = g.dimension() + 1;
        const Path twist = twist_route(g, u, v, params);
        const Path greedy = greedy_route(g, u, v);
        CHECK(twist.vertices == greedy.vertices);
        CHECK(twist.levels == greedy.levels);
        CHECK(twist.phases == 0);
    }
}

TEST_CASE("twist route: validity, phase accounting, distance dominance") {
    // Oracle: exact distances from a full BFS on the same instance.
    for (auto policy : {CouplingPolicy::Independent, CouplingPolicy::Duplicube}) {
        const TwistedCube g = build(12, policy, 19);
        const RouterParams params{3, 4};
        SplitMix64 rng(9);
        std::uint64_t twist_total = 0;
        std::uint64_t greedy_total = 0;
        int max_twist = 0;
        for (int i = 0; i < 200; ++i) {
            const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
            const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
            const Path p = twist_route(g, u, v, params);
            REQUIRE(validate_path(g, p, u, v));
            const auto dist = bfs_distances(g, u);
            REQUIRE(p.length() >= dist[v]);
            const Path greedy = greedy_route(g, u, v);
            REQUIRE(greedy.length() >= dist[v]);

            // Each phase drops alpha by at least 1 and costs at most t+1 hops.
            REQUIRE(p.alpha_trace.size() == (p.phases ? p.phases + 1 : 0));
            for (std::size_t j = 0; j + 1 < p.alpha_trace.size(); ++j) {
                REQUIRE(p.alpha_trace[j] > p.alpha_trace[j + 1]);
            }
            const std::size_t tail = p.phases ? static_cast<std::size_t>(p.alpha_trace.back())
                                              : static_cast<std::size_t>(alpha(u, v));
            REQUIRE(p.length() <= p.phases * static_cast<std::size_t>(params.t + 1) + tail);

            twist_total += p.length();
            greedy_total += greedy.length();
            max_twist = std::max(max_twist, static_cast<int>(p.length()));
        }
        // Mean twist vs mean greedy and max twist vs the exact diameter are
        // recorded for inspection, not asserted.
        const int diameter = exact_diameter(g);
        MESSAGE("policy ", std::string(policy_name(policy)), ": mean twist ", twist_total / 200.0,
                ", mean greedy ", greedy_total / 200.0, ", max twist ", max_twist,
                ", exact diameter ", diameter);
    }
}

TEST_CASE("twist route stays short at n=16") {
    const TwistedCube g = build(16, CouplingPolicy::Independent, 23);
    const RouterParams params{3, 4};
    SplitMix64 rng(10);
    for (int i = 0; i < 1000; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const auto v = static_cast<VertexLabel>(rng.bounded(g.num_vertices()));
        const Path p = twist_route(g, u, v, params);
        REQUIRE(validate_path(g, p, u, v));
        REQUIRE(p.length() <= 16);
    }
}

TEST_CASE("router default parameters are total and in range") {
    for (int n = 1; n <= 30; ++n) {
        const RouterParams p = RouterParams::defaults_for(n);
        CHECK(p.t >= 1);
        CHECK(p.n0 >= 1);
        CHECK(p.n0 <= n + 1);
    }
    CHECK(RouterParams::defaults_for(16).n0 == 1);
    CHECK(RouterParams::defaults_for(20).n0 == 2);
}

TEST_CASE("validate_path rejects tampered paths") {
    const TwistedCube g = build(8, CouplingPolicy::Duplicube, 21);
    Path p = greedy_route(g, 3, 200);
    REQUIRE(validate_path(g, p, 3, 200));

    SUBCASE("wrong endpoints") {
        CHECK_FALSE(validate_path(g, p, 4, 200));
        CHECK_FALSE(validate_path(g, p, 3, 201));
    }
    SUBCASE("vertex replaced by a non-neighbor") {
        REQUIRE(p.vertices.size() >= 3);
        p.vertices[1] ^= 0x55;
        CHECK_FALSE(validate_path(g, p, 3, 200));
    }
    SUBCASE("level out of range") {
        p.levels[0] = 9;
        CHECK_FALSE(validate_path(g, p, 3, 200));
    }
    SUBCASE("empty path") {
        CHECK_FALSE(validate_path(g, Path{}, 3, 200));
    }
}
