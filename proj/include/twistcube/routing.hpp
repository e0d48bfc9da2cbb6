#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "twistcube/graph.hpp"
#include "twistcube/label.hpp"

namespace twistcube {

// A walk through the graph. vertices has one more entry than levels; hop i
// goes from vertices[i] to vertices[i+1] through the level levels[i] matching.
// For ball-search routes, phases counts search phases and alpha_trace records
// alpha(current, target) at every phase boundary (phases+1 values).
struct Path {
    std::vector<VertexLabel> vertices;
    std::vector<int> levels;
    std::size_t phases = 0;
    std::vector<int> alpha_trace;

    std::size_t length() const { return levels.size(); }
    bool operator==(const Path&) const = default;
};

struct RouterParams {
    int t = 2;   // ball radius per search phase
    int n0 = 1;  // below this alpha the route finishes greedily

    // Totalized small-n schedule: n0 = ceil(n / (log2 n)^2) (at least 1) and
    // t = floor(log2 n0 / (4 log2 log2 n0)) when that is meaningful, else 2.
    static RouterParams defaults_for(int n) {
        RouterParams p;
        if (n <= 1) return p;  // t=2, n0=1
        const double lg = std::log2(static_cast<double>(n));
        p.n0 = std::max(1, static_cast<int>(std::ceil(static_cast<double>(n) / (lg * lg))));
        if (p.n0 >= 5) {
            const double lg0 = std::log2(static_cast<double>(p.n0));
            p.t = std::max(2, static_cast<int>(std::floor(lg0 / (4.0 * std::log2(lg0)))));
        } else {
            p.t = 2;
        }
        return p;
    }
};

// Greedy walk: repeatedly flip the largest coordinate still differing from
// the target. Strictly decreases alpha, so it ends in at most alpha(u,v) hops.
inline Path greedy_route(const TwistedCube& g, VertexLabel u, VertexLabel v) {
    require_label(u, g.dimension(), "source");
    require_label(v, g.dimension(), "target");
    Path p;
    p.vertices.push_back(u);
    VertexLabel cur = u;
    while (cur != v) {
        const int k = alpha(cur, v);
        cur = g.neighbor_unchecked(cur, k);
        p.vertices.push_back(cur);
        p.levels.push_back(k);
    }
    return p;
}

// Closed ball from a BFS restricted to levels below `cap`. Restricting the
// levels keeps the walk inside the subcube of vertices agreeing with the
// center on every coordinate >= cap; cap = n+1 explores the whole graph.
class Ball {
  public:
    struct Entry {
        VertexLabel vertex;
        int dist;
        std::uint32_t parent_index;  // index into entries; self for the center
        int parent_level;            // level of the hop from the parent; 0 for center
    };

    Ball(VertexLabel center, int radius, int cap) : center_(center), radius_(radius), cap_(cap) {}

    VertexLabel center() const { return center_; }
    int radius() const { return radius_; }
    int cap() const { return cap_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    bool contains(VertexLabel v) const { return index_.count(v) > 0; }
    int distance(VertexLabel v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw std::out_of_range("vertex not in ball");
        return entries_[it->second].dist;
    }

    // Hops of the BFS tree path center -> v, as (level, vertex-after-hop).
    std::vector<std::pair<int, VertexLabel>> hops_to(VertexLabel v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw std::out_of_range("vertex not in ball");
        std::vector<std::pair<int, VertexLabel>> hops;
        std::uint32_t i = it->second;
        while (entries_[i].parent_level != 0) {
            hops.emplace_back(entries_[i].parent_level, entries_[i].vertex);
            i = entries_[i].parent_index;
        }
        std::reverse(hops.begin(), hops.end());
        return hops;
    }

  private:
    friend Ball ball_bfs(const TwistedCube&, VertexLabel, int, int);

    void add(VertexLabel v, int dist, std::uint32_t parent_index, int parent_level) {
        index_.emplace(v, static_cast<std::uint32_t>(entries_.size()));
        entries_.push_back({v, dist, parent_index, parent_level});
    }

    VertexLabel center_;
    int radius_;
    int cap_;
    std::vector<Entry> entries_;  // BFS order; entries_[0] is the center
    std::unordered_map<VertexLabel, std::uint32_t> index_;
};

inline Ball ball_bfs(const TwistedCube& g, VertexLabel center, int radius, int cap) {
    require_label(center, g.dimension(), "ball center");
    if (cap < 1 || cap > g.dimension() + 1) {
        throw std::invalid_argument("ball cap out of range");
    }
    Ball ball(center, radius, cap);
    ball.add(center, 0, 0, 0);
    std::size_t frontier_begin = 0;
    for (int d = 0; d < radius; ++d) {
        const std::size_t frontier_end = ball.entries_.size();
        if (frontier_begin == frontier_end) break;
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            const VertexLabel x = ball.entries_[i].vertex;
            for (int k = 1; k < cap; ++k) {
                const VertexLabel y = g.neighbor_unchecked(x, k);
                if (!ball.contains(y)) {
                    ball.add(y, d + 1, static_cast<std::uint32_t>(i), k);
                }
            }
        }
        frontier_begin = frontier_end;
    }
    return ball;
}

// Ball-search route. While alpha(cur, v) = k is at least n0, BFS a radius-t
// ball inside the copy of the (k-1)-dimensional sub-instance containing cur,
// hop through level k from the ball vertex whose matched partner minimizes
// alpha against v (ties: smaller BFS distance, then smaller label), and
// repeat. Once alpha drops below n0, finish greedily. Every phase strictly
// decreases alpha because w = cur itself is always a candidate.
inline Path twist_route(const TwistedCube& g, VertexLabel u, VertexLabel v,
                        const RouterParams& params) {
    require_label(u, g.dimension(), "source");
    require_label(v, g.dimension(), "target");
    if (params.t < 1) throw std::invalid_argument("router t must be >= 1");
    if (params.n0 < 1 || params.n0 > g.dimension() + 1) {
        throw std::invalid_argument("router n0 must be in [1, n+1]");
    }
    Path p;
    p.vertices.push_back(u);
    VertexLabel cur = u;
    while (true) {
        const int k = alpha(cur, v);
        if (k == 0 || k < params.n0) {
            if (p.phases > 0) p.alpha_trace.push_back(k);
            break;
        }
        const Ball ball = ball_bfs(g, cur, params.t, k);
        VertexLabel best_w = cur;
        int best_alpha = g.dimension() + 1;
        int best_dist = 0;
        for (const Ball::Entry& e : ball.entries()) {
            const int a = alpha(g.neighbor_unchecked(e.vertex, k), v);
            if (a < best_alpha || (a == best_alpha && (e.dist < best_dist ||
                                                       (e.dist == best_dist && e.vertex < best_w)))) {
                best_alpha = a;
                best_dist = e.dist;
                best_w = e.vertex;
            }
        }
        for (const auto& [level, vertex] : ball.hops_to(best_w)) {
            p.vertices.push_back(vertex);
            p.levels.push_back(level);
        }
        cur = g.neighbor_unchecked(best_w, k);
        p.vertices.push_back(cur);
        p.levels.push_back(k);
        p.alpha_trace.push_back(k);
        ++p.phases;
    }
    while (cur != v) {
        const int k = alpha(cur, v);
        cur = g.neighbor_unchecked(cur, k);
        p.vertices.push_back(cur);
        p.levels.push_back(k);
    }
    return p;
}

inline Path twist_route(const TwistedCube& g, VertexLabel u, VertexLabel v) {
    return twist_route(g, u, v, RouterParams::defaults_for(g.dimension()));
}

// True iff p runs from u to v and every hop matches the recorded level.
inline bool validate_path(const TwistedCube& g, const Path& p, VertexLabel u, VertexLabel v) {
    if (p.vertices.empty()) return false;
    if (p.vertices.size() != p.levels.size() + 1) return false;
    if (p.vertices.front() != u || p.vertices.back() != v) return false;
    for (std::size_t i = 0; i < p.levels.size(); ++i) {
        const int k = p.levels[i];
        if (k < 1 || k > g.dimension()) return false;
        if (p.vertices[i] >= g.num_vertices()) return false;
        if (g.neighbor_unchecked(p.vertices[i], k) != p.vertices[i + 1]) return false;
    }
    return true;
}

}  // namespace twistcube
