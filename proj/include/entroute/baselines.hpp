#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/cost_model.hpp"
#include "entroute/disjoint.hpp"
#include "entroute/errors.hpp"
#include "entroute/generate.hpp"
#include "entroute/ops.hpp"
#include "entroute/overlay.hpp"
#include "entroute/routing.hpp"

namespace entroute {

struct DijkstraResult {
    bool found = false;
    Route route;
    double cost = 0.0;
    OpCounter ops;
};

// Exact minimum-cost path under non-negative per-edge costs, with counters
// for edge relaxations and priority-queue operations. Deterministic
// tie-breaking: equal-cost queue entries pop in node-id order and an equal
// tentative cost never replaces an earlier predecessor.
inline DijkstraResult dijkstra_shortest_path(const BaseGraph& g, NodeId source, NodeId target,
                                             std::span<const double> edge_costs,
                                             const NodeMask& forbidden = {},
                                             const std::vector<char>* removed_edges = nullptr) {
    if (edge_costs.size() != g.edges.size())
        throw ConfigError("cost table size does not match edge count");
    for (double c : edge_costs)
        if (c < 0.0) throw ConfigError("Dijkstra requires non-negative costs");
    if (forbidden.test(source) || forbidden.test(target))
        throw RoutingError("route endpoint is forbidden", source);

    DijkstraResult result;
    const auto n = g.node_count();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> pred_node(n, -1);
    std::vector<std::int64_t> pred_edge(n, -1);
    std::vector<char> done(n, 0);

    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});
    ++result.ops.queue_ops;

    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        ++result.ops.queue_ops;
        if (done[v]) continue;
        done[v] = 1;
        if (v == target) break;
        for (auto e : g.incident[v]) {
            if (removed_edges && (*removed_edges)[e]) continue;
            const NodeId u = g.edges[e].other(v);
            if (forbidden.test(u) || done[u]) continue;
            ++result.ops.relaxations;
            const double nd = d + edge_costs[e];
            if (nd < dist[u]) {
                dist[u] = nd;
                pred_node[u] = v;
                pred_edge[u] = static_cast<std::int64_t>(e);
                queue.push({nd, u});
                ++result.ops.queue_ops;
            }
        }
    }

    result.ops.n_o = result.ops.relaxations;
    if (!std::isfinite(dist[target])) return result;

    result.found = true;
    result.cost = dist[target];
    std::vector<NodeId> nodes{target};
    std::vector<std::uint32_t> edges;
    NodeId cur = target;
    while (cur != source) {
        edges.push_back(static_cast<std::uint32_t>(pred_edge[cur]));
        cur = static_cast<NodeId>(pred_node[cur]);
        nodes.push_back(cur);
    }
    std::reverse(nodes.begin(), nodes.end());
    std::reverse(edges.begin(), edges.end());
    result.route.nodes = std::move(nodes);
    result.route.edges = std::move(edges);
    result.route.total_cost = result.cost;
    return result;
}

// Reference penalty scheme: the same cost dynamics as the decentralized
// solver, but with each path found by Dijkstra on the working costs. With an
// initial cost matrix supplied, every path slot starts from it instead of the
// model coefficients (the "with initial costs" variant).
inline DisjointPathSet kpa_kpi_disjoint(const BaseGraph& g, const CostModel& cm, NodeId source,
                                        NodeId target, const SolveOptions& options,
                                        const std::vector<double>* initial_matrix = nullptr) {
    auto route_by_dijkstra = [&](std::size_t, const std::vector<double>& zeta,
                                 const NodeMask& forbidden, OpCounter& ops) -> std::optional<Route> {
        DijkstraResult search = dijkstra_shortest_path(g, source, target, zeta, forbidden);
        ops.relaxations += search.ops.relaxations;
        ops.queue_ops += search.ops.queue_ops;
        if (!search.found) return std::nullopt;
        return std::move(search.route);
    };
    DisjointPathSet result =
        detail::penalty_loop(g, cm, source, target, options, initial_matrix, route_by_dijkstra);
    result.ops.n_o = result.ops.relaxations;
    return result;
}

struct KspResult {
    std::vector<Route> paths;
    bool complete = false;
    double total_cost = 0.0;
    OpCounter ops;
};

// Successive shortest paths with link-disjoint semantics: after each found
// path its links are removed before the next search.
inline KspResult ksp_disjoint(const BaseGraph& g, NodeId source, NodeId target, int z,
                              std::span<const double> edge_costs) {
    if (z < 1) throw ConfigError("z must be >= 1");
    KspResult result;
    std::vector<char> removed(g.edges.size(), 0);
    for (int i = 0; i < z; ++i) {
        DijkstraResult search =
            dijkstra_shortest_path(g, source, target, edge_costs, NodeMask{}, &removed);
        result.ops += search.ops;
        if (!search.found) break;
        for (auto e : search.route.edges) removed[e] = 1;
        result.total_cost += search.cost;
        result.paths.push_back(std::move(search.route));
    }
    result.complete = static_cast<int>(result.paths.size()) == z;
    result.ops.n_o = result.ops.relaxations;
    return result;
}

enum class Scheme { proposed, kpa, kpi, ksp };

inline std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::proposed: return "proposed";
    case Scheme::kpa: return "kpa";
    case Scheme::kpi: return "kpi";
    case Scheme::ksp: return "ksp";
    }
    return "?";
}

// Closed-form operation-count envelopes per scheme. Logarithms are base 10,
// which is the base under which the published headline values at budget 10
// and n = 100 come out exactly (400, 1e5, 2e3).
inline double complexity_envelope(Scheme scheme, int budget_or_z, std::int64_t n) {
    if (n < 2) throw ConfigError("envelope needs n >= 2");
    const double b = static_cast<double>(budget_or_z);
    const double nn = static_cast<double>(n);
    switch (scheme) {
    case Scheme::proposed: {
        const double x = b * std::log10(nn);
        return x * x;
    }
    case Scheme::kpa:
    case Scheme::kpi: return b * nn * nn;
    case Scheme::ksp: return b * nn * std::log10(nn);
    }
    return 0.0;
}

struct BenchConfig {
    std::vector<std::int64_t> n_values = {100};
    std::vector<int> budgets = {10};
    int z_paths = 2; // disjoint paths requested from the path solvers
    int long_range_contacts = 1;
    int dimension = 2;
};

struct BenchRow {
    std::string scheme;
    std::int64_t n = 0;
    int budget_or_z = 0;
    double n_o_envelope = 0.0;
    double n_o_measured = 0.0;
    bool success = false;
    double psi_total = 0.0;
    double wall_time_ms = 0.0;
};

// Runs every scheme on identical instances over the configured grid and
// reports measured counters next to the closed-form envelopes. Instances are
// drawn from the inverse-power lattice family at the nearest square size.
// Wall time is the only non-deterministic column.
inline std::vector<BenchRow> bench_campaign(const BenchConfig& config, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    RandomStream cell_rng(seed, "bench");

    for (std::int64_t n : config.n_values) {
        if (n < 2) throw ConfigError("bench grid needs n >= 2");
        const std::uint64_t instance_seed = cell_rng.next_u64();

        LatticeFamilyParams family;
        family.dimension = config.dimension;
        family.side = std::max<std::int32_t>(
            2, static_cast<std::int32_t>(std::llround(
                   std::pow(static_cast<double>(n), 1.0 / config.dimension))));
        family.long_range_contacts = config.long_range_contacts;
        family.grid_probability = 0.1;
        family.long_range_probability = 0.08;
        OverlayNetwork net = lattice_small_world(family, instance_seed);

        std::int64_t capacity = 1;
        for (int i = 0; i < config.dimension; ++i) capacity *= family.side;
        auto coords = lattice_identity_coords(config.dimension, family.side);
        std::vector<LatticePosition> placement(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) placement[i].coords = coords[i];
        BaseGraph g = embed_overlay(net, config.dimension, capacity, std::move(placement));
        CostModel cm = compute_cost_model(g);
        const auto hubs = net.high_degree_nodes();

        const auto instance_nodes = static_cast<std::int64_t>(net.node_count());
        RandomStream demand_rng(instance_seed, "demand");
        const auto src = static_cast<NodeId>(demand_rng.uniform_int(0, instance_nodes - 1));
        auto dst = static_cast<NodeId>(demand_rng.uniform_int(0, instance_nodes - 2));
        if (dst >= src) ++dst;

        for (int budget : config.budgets) {
            const int run_budget = std::max(budget, 1);
            SolveOptions options;
            options.z = std::max(1, std::min(config.z_paths, run_budget));
            options.max_concurrences = run_budget;
            options.context = SolveContext::demand_main;
            options.hub_nodes = hubs;

            auto timed = [](auto&& fn) {
                const auto start = std::chrono::steady_clock::now();
                fn();
                const auto stop = std::chrono::steady_clock::now();
                return std::chrono::duration<double, std::milli>(stop - start).count();
            };

            BenchRow proposed{scheme_name(Scheme::proposed), n, budget,
                              complexity_envelope(Scheme::proposed, budget, n), 0, false, 0, 0};
            proposed.wall_time_ms = timed([&] {
                try {
                    DisjointPathSet set = find_disjoint_paths(g, cm, src, dst, options);
                    proposed.success = set.complete;
                    proposed.psi_total = set.total_cost;
                    proposed.n_o_measured = static_cast<double>(set.ops.n_o);
                } catch (const Error&) {
                    proposed.success = false;
                }
            });
            rows.push_back(proposed);

            BenchRow kpa{scheme_name(Scheme::kpa), n, budget,
                         complexity_envelope(Scheme::kpa, budget, n), 0, false, 0, 0};
            kpa.wall_time_ms = timed([&] {
                try {
                    DisjointPathSet set = kpa_kpi_disjoint(g, cm, src, dst, options);
                    kpa.success = set.complete;
                    kpa.psi_total = set.total_cost;
                    kpa.n_o_measured = static_cast<double>(set.ops.n_o);
                } catch (const Error&) {
                    kpa.success = false;
                }
            });
            rows.push_back(kpa);

            BenchRow kpi{scheme_name(Scheme::kpi), n, budget,
                         complexity_envelope(Scheme::kpi, budget, n), 0, false, 0, 0};
            kpi.wall_time_ms = timed([&] {
                try {
                    const std::vector<double> initial = cm.repl_cost;
                    DisjointPathSet set = kpa_kpi_disjoint(g, cm, src, dst, options, &initial);
                    kpi.success = set.complete;
                    kpi.psi_total = set.total_cost;
                    kpi.n_o_measured = static_cast<double>(set.ops.n_o);
                } catch (const Error&) {
                    kpi.success = false;
                }
            });
            rows.push_back(kpi);

            BenchRow ksp{scheme_name(Scheme::ksp), n, budget,
                         complexity_envelope(Scheme::ksp, budget, n), 0, false, 0, 0};
            ksp.wall_time_ms = timed([&] {
                try {
                    KspResult set = ksp_disjoint(g, src, dst, run_budget, cm.repl_cost);
                    ksp.success = set.complete;
                    ksp.psi_total = set.total_cost;
                    ksp.n_o_measured = static_cast<double>(set.ops.n_o);
                } catch (const Error&) {
                    ksp.success = false;
                }
            });
            rows.push_back(ksp);
        }
    }
    return rows;
}

} // namespace entroute
