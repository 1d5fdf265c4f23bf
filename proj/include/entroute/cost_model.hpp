#pragma once

#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/errors.hpp"
#include "entroute/overlay.hpp"

namespace entroute {

// Exact counts of minimum-hop paths between a node pair. Paths are node
// sequences over the simple graph induced by the embedded connections;
// parallel connections at different levels do not multiply counts.
struct PathCounts {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> through; // per node, zero for the endpoints
};

namespace detail {

struct BfsLayers {
    std::vector<std::int32_t> dist;
    std::vector<std::uint64_t> sigma;
};

inline std::vector<std::vector<NodeId>> simple_adjacency(const BaseGraph& g) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::vector<char> seen(g.node_count(), 0);
        for (auto e : g.incident[v]) {
            const NodeId u = g.edges[e].other(v);
            if (!seen[u]) {
                seen[u] = 1;
                adj[v].push_back(u);
            }
        }
    }
    return adj;
}

inline BfsLayers bfs_path_counts(const std::vector<std::vector<NodeId>>& adj, NodeId src) {
    BfsLayers out;
    out.dist.assign(adj.size(), -1);
    out.sigma.assign(adj.size(), 0);
    out.dist[src] = 0;
    out.sigma[src] = 1;
    std::deque<NodeId> queue{src};
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (NodeId u : adj[v]) {
            if (out.dist[u] < 0) {
                out.dist[u] = out.dist[v] + 1;
                queue.push_back(u);
            }
            if (out.dist[u] == out.dist[v] + 1) out.sigma[u] += out.sigma[v];
        }
    }
    return out;
}

} // namespace detail

// Counts all minimum-hop paths between p and q, and for every other node the
// number of those paths that transit it. A disconnected pair yields zero
// total with an empty through table.
inline PathCounts shortest_path_counts(const BaseGraph& g, NodeId p, NodeId q) {
    if (p == q) throw ConfigError("path counting requires distinct endpoints");
    if (p >= g.node_count() || q >= g.node_count())
        throw NotFoundError("path counting endpoint outside the graph");

    const auto adj = detail::simple_adjacency(g);
    const auto fwd = detail::bfs_path_counts(adj, p);
    PathCounts counts;
    counts.through.assign(g.node_count(), 0);
    if (fwd.dist[q] < 0) return counts;

    const auto bwd = detail::bfs_path_counts(adj, q);
    counts.total = fwd.sigma[q];
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (v == p || v == q) continue;
        if (fwd.dist[v] >= 0 && bwd.dist[v] >= 0 && fwd.dist[v] + bwd.dist[v] == fwd.dist[q])
            counts.through[v] = fwd.sigma[v] * bwd.sigma[v];
    }
    return counts;
}

// Per-node transit share over all unordered connected pairs (the fraction of
// each pair's minimum-hop paths that transit the node) and its normalization
// to [0,1]. Accumulation follows a fixed pair order so results are exactly
// reproducible against pairwise enumeration.
inline std::pair<std::vector<double>, std::vector<double>> compute_chi_beta(const BaseGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> chi(n, 0.0);
    if (n >= 2) {
        const auto adj = detail::simple_adjacency(g);
        std::vector<detail::BfsLayers> layers(n);
        for (NodeId v = 0; v < n; ++v) layers[v] = detail::bfs_path_counts(adj, v);
        for (NodeId p = 0; p < n; ++p) {
            for (NodeId q = p + 1; q < n; ++q) {
                if (layers[p].dist[q] < 0) continue;
                const auto total = static_cast<double>(layers[p].sigma[q]);
                const auto span = layers[p].dist[q];
                for (NodeId v = 0; v < n; ++v) {
                    if (v == p || v == q) continue;
                    if (layers[p].dist[v] >= 0 && layers[q].dist[v] >= 0 &&
                        layers[p].dist[v] + layers[q].dist[v] == span) {
                        const auto through =
                            static_cast<double>(layers[p].sigma[v] * layers[q].sigma[v]);
                        chi[v] += through / total;
                    }
                }
            }
        }
    }

    std::vector<double> beta(n, 0.0);
    double max_chi = 0.0;
    for (double x : chi) max_chi = std::max(max_chi, x);
    if (max_chi > 0.0)
        for (std::size_t v = 0; v < n; ++v) beta[v] = chi[v] / max_chi;
    return {std::move(chi), std::move(beta)};
}

enum class PathKind { main, replacement };

// Edge cost coefficients for the two path roles: main-path edges average the
// endpoint weights; replacement-path edges re-normalize that to [0,1] with
// unit maximum.
class CostModel {
public:
    std::vector<double> transit_share;  // chi per node
    std::vector<double> node_weight;    // beta per node
    std::vector<double> main_cost;      // gamma per edge
    std::vector<double> repl_cost;      // tau per edge

    double main_edge_cost(std::uint32_t edge) const { return main_cost[edge]; }
    double replacement_edge_cost(std::uint32_t edge) const { return repl_cost[edge]; }
    double edge_cost(std::uint32_t edge, PathKind kind) const {
        return kind == PathKind::main ? main_cost[edge] : repl_cost[edge];
    }
};

inline std::vector<double> gamma_from_beta(const BaseGraph& g, const std::vector<double>& beta) {
    std::vector<double> gamma(g.edges.size(), 0.0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        gamma[e] = (beta[g.edges[e].a] + beta[g.edges[e].b]) / 2.0;
    return gamma;
}

// All-zero input yields all-zero output (degenerate graphs with no transit
// nodes have no meaningful normalization).
inline std::vector<double> tau_from_gamma(const std::vector<double>& gamma) {
    double max_gamma = 0.0;
    for (double x : gamma) max_gamma = std::max(max_gamma, x);
    std::vector<double> tau(gamma.size(), 0.0);
    if (max_gamma > 0.0)
        for (std::size_t e = 0; e < gamma.size(); ++e) tau[e] = gamma[e] / max_gamma;
    return tau;
}

inline CostModel compute_cost_model(const BaseGraph& g) {
    CostModel cm;
    auto [chi, beta] = compute_chi_beta(g);
    cm.transit_share = std::move(chi);
    cm.node_weight = std::move(beta);
    cm.main_cost = gamma_from_beta(g, cm.node_weight);
    cm.repl_cost = tau_from_gamma(cm.main_cost);
    return cm;
}

} // namespace entroute
