#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here is exhaustive search over small graphs; none of it shares
// code with the library paths it checks.

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/overlay.hpp"

namespace oracles {

using entroute::BaseGraph;
using entroute::NodeId;

inline std::vector<std::vector<NodeId>> simple_adjacency(const BaseGraph& g) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (const auto& e : g.edges) {
        bool dup_ab = false, dup_ba = false;
        for (auto v : adj[e.a]) dup_ab |= v == e.b;
        for (auto v : adj[e.b]) dup_ba |= v == e.a;
        if (!dup_ab) adj[e.a].push_back(e.b);
        if (!dup_ba) adj[e.b].push_back(e.a);
    }
    return adj;
}

inline int bfs_distance(const std::vector<std::vector<NodeId>>& adj, NodeId s, NodeId t) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<NodeId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        if (v == t) return dist[v];
        for (auto u : adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return -1;
}

struct PathEnumeration {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> through; // per node, endpoints stay zero
};

// DFS over all simple paths, keeping only those of minimal hop count.
inline PathEnumeration enumerate_min_hop_paths(const std::vector<std::vector<NodeId>>& adj,
                                               NodeId s, NodeId t) {
    PathEnumeration out;
    out.through.assign(adj.size(), 0);
    const int shortest = bfs_distance(adj, s, t);
    if (shortest < 0) return out;

    std::vector<NodeId> stack{s};
    std::vector<char> visited(adj.size(), 0);
    visited[s] = 1;
    std::function<void()> dfs = [&] {
        const NodeId v = stack.back();
        if (static_cast<int>(stack.size()) - 1 > shortest) return;
        if (v == t) {
            if (static_cast<int>(stack.size()) - 1 == shortest) {
                ++out.total;
                for (std::size_t i = 1; i + 1 < stack.size(); ++i) ++out.through[stack[i]];
            }
            return;
        }
        for (auto u : adj[v]) {
            if (visited[u]) continue;
            visited[u] = 1;
            stack.push_back(u);
            dfs();
            stack.pop_back();
            visited[u] = 0;
        }
    };
    dfs();
    return out;
}

// Transit share per node by pairwise enumeration, accumulated over unordered
// pairs in (p, q) order with p < q — the same order the library uses, so
// matching results are bitwise equal.
inline std::vector<double> chi_by_enumeration(const BaseGraph& g) {
    const auto adj = simple_adjacency(g);
    std::vector<double> chi(g.node_count(), 0.0);
    for (NodeId p = 0; p < g.node_count(); ++p) {
        for (NodeId q = p + 1; q < g.node_count(); ++q) {
            const auto counts = enumerate_min_hop_paths(adj, p, q);
            if (counts.total == 0) continue;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                if (v == p || v == q || counts.through[v] == 0) continue;
                chi[v] += static_cast<double>(counts.through[v]) /
                          static_cast<double>(counts.total);
            }
        }
    }
    return chi;
}

// Exhaustive minimum-cost simple path (edge costs), for checking exact
// shortest-path implementations on small graphs.
inline double min_cost_path_bruteforce(const BaseGraph& g, NodeId s, NodeId t,
                                       const std::vector<double>& edge_costs) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> visited(g.node_count(), 0);
    visited[s] = 1;
    std::function<void(NodeId, double)> dfs = [&](NodeId v, double cost) {
        if (cost >= best) return;
        if (v == t) {
            best = cost;
            return;
        }
        for (auto e : g.incident[v]) {
            const NodeId u = g.edges[e].other(v);
            if (visited[u]) continue;
            visited[u] = 1;
            dfs(u, cost + edge_costs[e]);
            visited[u] = 0;
        }
    };
    dfs(s, 0.0);
    return best;
}

} // namespace oracles
