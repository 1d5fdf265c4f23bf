#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/cost_model.hpp"
#include "entroute/errors.hpp"
#include "entroute/ops.hpp"
#include "entroute/overlay.hpp"
#include "entroute/routing.hpp"

namespace entroute {

// Whether the path set being built starts with a demand main path (costed by
// the main coefficient, high-degree nodes excluded from it) or consists
// entirely of replacement paths (all costed by the replacement coefficient,
// high-degree nodes allowed everywhere).
enum class SolveContext { demand_main, replacement_only };

struct SolveOptions {
    int z = 1;                  // number of node-disjoint paths to find
    int max_concurrences = 1;   // restart budget
    SolveContext context = SolveContext::demand_main;
    std::vector<NodeId> hub_nodes;       // excluded from the first path in demand context
    std::vector<NodeId> forbidden_nodes; // excluded from every path (e.g. a failed node)
};

// Final cost tables of a solver run: the shared working costs and one table
// of per-edge costs per path slot. Both only ever grow during a run.
struct AuxiliaryCosts {
    std::vector<double> working_cost;           // zeta per edge
    std::vector<std::vector<double>> path_cost; // per path slot, per edge
};

struct DisjointPathSet {
    std::vector<Route> paths;       // paths[0] is the first/main path
    std::vector<double> path_costs; // per-path totals from the final cost tables
    double total_cost = 0.0;            // over all returned paths
    double replacement_total = 0.0;     // excluding the first path
    int concurrences = 1;               // final value of the restart counter
    int budget = 1;
    bool complete = false;
    std::string status;                 // reason when incomplete
    AuxiliaryCosts aux;
    OpCounter ops;
};

namespace detail {

// The penalty loop shared by the decentralized solver and the Dijkstra-based
// reference scheme. The route provider is called with the current path slot,
// the working costs, and the active forbidden mask; it returns a route, or
// nothing when no path can be found under the current costs.
//
// Accepted paths penalize every connection incident to their transit nodes by
// the path's own cost, pushing later searches elsewhere. A candidate that
// shares a transit node or a connection with the discovered set instead
// penalizes the connections around the shared transit nodes on every path
// slot, clears the discovered set, and restarts — bounded by the concurrence
// budget, after which the partial set is returned flagged. Working costs and
// per-slot costs only ever grow, including across restarts.
template <class RouteFn>
DisjointPathSet penalty_loop(const BaseGraph& g, const CostModel& cm, NodeId source, NodeId target,
                             const SolveOptions& options, const std::vector<double>* initial_costs,
                             RouteFn&& find_route) {
    if (source == target) throw ConfigError("disjoint path solve requires distinct endpoints");
    if (options.z < 1) throw ConfigError("z must be >= 1");
    if (options.max_concurrences < 1) throw ConfigError("concurrence budget must be >= 1");
    if (initial_costs && initial_costs->size() != g.edges.size())
        throw ConfigError("initial cost matrix size does not match edge count");

    const auto z = static_cast<std::size_t>(options.z);

    DisjointPathSet result;
    result.budget = options.max_concurrences;

    // per-slot cost tables: slot 0 is the main path in demand context
    auto& delta = result.aux.path_cost;
    delta.assign(z, {});
    for (std::size_t p = 0; p < z; ++p) {
        if (initial_costs)
            delta[p] = *initial_costs;
        else
            delta[p] = (p == 0 && options.context == SolveContext::demand_main) ? cm.main_cost
                                                                                : cm.repl_cost;
    }
    auto& zeta = result.aux.working_cost;
    zeta = delta[0];

    NodeMask always_forbidden;
    for (auto v : options.forbidden_nodes) always_forbidden.set(v);
    // high-degree exclusion applies to transit only; a demand may well start
    // or end at a high-degree node
    NodeMask first_path_forbidden = always_forbidden;
    if (options.context == SolveContext::demand_main)
        for (auto v : options.hub_nodes)
            if (v != source && v != target) first_path_forbidden.set(v);

    struct Discovered {
        Route route;
        std::set<NodeId> interior;
        std::set<std::uint32_t> connections;
    };
    std::vector<Discovered> discovered;
    std::set<NodeId> discovered_interior;
    std::set<std::uint32_t> discovered_connections;

    auto path_cost_now = [&](const Route& r, std::size_t slot) {
        double cost = 0.0;
        for (auto e : r.edges) cost += delta[slot][e];
        return cost;
    };

    int kappa = 1;
    bool first_attempt = true;

    auto escalate = [&](const std::string& reason) {
        // shared restart/termination handling for collisions and dead ends
        ++kappa;
        if (kappa > options.max_concurrences) {
            result.status = reason;
            return false;
        }
        discovered.clear();
        discovered_interior.clear();
        discovered_connections.clear();
        return true;
    };

    while (discovered.size() < z) {
        const std::size_t slot = discovered.size();
        const NodeMask& forbidden = (slot == 0) ? first_path_forbidden : always_forbidden;

        std::optional<Route> candidate = find_route(slot, zeta, forbidden, result.ops);
        if (!candidate) {
            if (slot == 0 && first_attempt)
                throw NoMainPathError("no main path between " + std::to_string(source) + " and " +
                                      std::to_string(target));
            if (!escalate("no path found while searching path " + std::to_string(slot + 1)))
                break;
            continue;
        }
        first_attempt = false;

        std::set<NodeId> interior;
        for (auto v : candidate->interior()) interior.insert(v);

        std::vector<NodeId> shared_nodes;
        for (auto v : interior)
            if (discovered_interior.count(v)) shared_nodes.push_back(v);
        bool shared_connection = false;
        for (auto e : candidate->edges)
            if (discovered_connections.count(e)) shared_connection = true;

        if (shared_nodes.empty() && !shared_connection) {
            const double omega = path_cost_now(*candidate, slot);
            for (auto v : interior)
                for (auto e : g.incident[v]) zeta[e] += omega;
            Discovered d;
            d.route = *candidate;
            d.interior = interior;
            d.connections = {candidate->edges.begin(), candidate->edges.end()};
            discovered_interior.insert(interior.begin(), interior.end());
            discovered_connections.insert(d.connections.begin(), d.connections.end());
            discovered.push_back(std::move(d));
            continue;
        }

        const double candidate_cost = path_cost_now(*candidate, slot);
        std::set<std::uint32_t> concurring;
        for (auto v : shared_nodes)
            for (auto e : g.incident[v]) concurring.insert(e);
        for (std::size_t p = 0; p < z; ++p)
            for (auto e : concurring) delta[p][e] += candidate_cost;

        if (!escalate("concurrence budget exhausted")) break;
    }

    result.complete = discovered.size() == z;
    result.concurrences = kappa;
    result.paths.reserve(discovered.size());
    result.path_costs.reserve(discovered.size());
    for (std::size_t p = 0; p < discovered.size(); ++p) {
        double omega = path_cost_now(discovered[p].route, p);
        Route r = std::move(discovered[p].route);
        r.total_cost = omega;
        result.paths.push_back(std::move(r));
        result.path_costs.push_back(omega);
        result.total_cost += omega;
        if (p > 0) result.replacement_total += omega;
    }
    return result;
}

} // namespace detail

// Penalty-driven discovery of z mutually node-disjoint paths between the same
// endpoints, each found by decentralized greedy routing on the scaled graph
// built from the current working costs.
inline DisjointPathSet find_disjoint_paths(const BaseGraph& g, const CostModel& cm, NodeId source,
                                           NodeId target, const SolveOptions& options) {
    auto route_on_scaled = [&](std::size_t, const std::vector<double>& zeta,
                               const NodeMask& forbidden, OpCounter& ops) -> std::optional<Route> {
        const ScaledBaseGraph scaled = build_scaled_graph(g, zeta);
        try {
            Route r = greedy_route(ScaledGraphView(scaled), source, target, forbidden);
            ops.greedy_steps += r.steps();
            return r;
        } catch (const RoutingError&) {
            return std::nullopt;
        } catch (const TtlError&) {
            return std::nullopt;
        }
    };
    DisjointPathSet result =
        detail::penalty_loop(g, cm, source, target, options, nullptr, route_on_scaled);
    result.ops.n_o = result.ops.greedy_steps;
    return result;
}

inline DisjointPathSet find_disjoint_paths(const BaseGraph& g, const CostModel& cm,
                                           const Demand& demand, const SolveOptions& options) {
    return find_disjoint_paths(g, cm, demand.source, demand.target, options);
}

// ---------------------------------------------------------------------------
// Solution variables and constraint validators
// ---------------------------------------------------------------------------

// One traversed connection, oriented along its path.
struct DirectedUse {
    std::uint32_t edge = 0;
    NodeId from = 0;
    NodeId to = 0;
};

// Binary usage variables for one user: the main path's connections and each
// replacement path's connections, oriented along the paths.
struct Solution {
    int user = 0;
    std::vector<DirectedUse> main_uses;
    std::vector<std::vector<DirectedUse>> replacement_uses;

    bool main_uses_edge(std::uint32_t e) const {
        for (const auto& u : main_uses)
            if (u.edge == e) return true;
        return false;
    }
    bool replacement_uses_edge(std::uint32_t e) const {
        for (const auto& path : replacement_uses)
            for (const auto& u : path)
                if (u.edge == e) return true;
        return false;
    }
};

inline std::vector<DirectedUse> directed_uses(const Route& r) {
    std::vector<DirectedUse> uses;
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i)
        uses.push_back({r.edges[i], r.nodes[i], r.nodes[i + 1]});
    return uses;
}

inline Solution solution_from_paths(const DisjointPathSet& set, int user) {
    Solution sol;
    sol.user = user;
    if (!set.paths.empty()) sol.main_uses = directed_uses(set.paths.front());
    for (std::size_t p = 1; p < set.paths.size(); ++p)
        sol.replacement_uses.push_back(directed_uses(set.paths[p]));
    return sol;
}

// Overall flow cost of a set of per-user solutions: main usage weighted by
// the main coefficient, replacement usage by the replacement coefficient.
inline double objective_phi(std::span<const Solution> solutions, const CostModel& cm) {
    double total = 0.0;
    for (const auto& sol : solutions) {
        std::set<std::uint32_t> main_edges, repl_edges;
        for (const auto& u : sol.main_uses) main_edges.insert(u.edge);
        for (const auto& path : sol.replacement_uses)
            for (const auto& u : path) repl_edges.insert(u.edge);
        for (auto e : main_edges) total += cm.main_cost[e];
        for (auto e : repl_edges) total += cm.repl_cost[e];
    }
    return total;
}

struct FlowNodeDelta {
    NodeId node = 0;
    int delta = 0;
    int expected = 0;
};

struct FlowReport {
    bool ok = true;
    std::vector<FlowNodeDelta> violations;
};

namespace detail {

inline void check_unit_flow(const std::vector<DirectedUse>& uses, NodeId source, NodeId target,
                            std::size_t node_count, FlowReport& report) {
    std::vector<int> delta(node_count, 0);
    for (const auto& u : uses) {
        ++delta[u.from]; // egress
        --delta[u.to];   // ingress
    }
    for (NodeId v = 0; v < node_count; ++v) {
        const int expected = v == source ? 1 : (v == target ? -1 : 0);
        if (delta[v] != expected) {
            report.ok = false;
            report.violations.push_back({v, delta[v], expected});
        }
    }
}

} // namespace detail

// Conservation check: every path must be a unit flow from the demand source
// to the demand target (net egress +1 at the source, -1 at the target, 0 at
// every transit node). Replacement paths are validated one at a time; the
// formulation describes a single path's variables.
inline FlowReport validate_flow_conservation(const Solution& sol, const Demand& demand,
                                             const BaseGraph& g) {
    FlowReport report;
    detail::check_unit_flow(sol.main_uses, demand.source, demand.target, g.node_count(), report);
    for (const auto& path : sol.replacement_uses)
        detail::check_unit_flow(path, demand.source, demand.target, g.node_count(), report);
    return report;
}

struct ThroughputViolation {
    std::uint32_t edge = 0;
    double load = 0.0;
    double capacity = 0.0;
};

struct ThroughputReport {
    bool ok = true;
    std::vector<ThroughputViolation> violations;
};

// Capacity check: per connection, the summed demand of every user whose main
// or replacement flow crosses it must not exceed the connection throughput.
inline ThroughputReport validate_throughput(std::span<const Solution> solutions,
                                            std::span<const Demand> demands,
                                            const OverlayNetwork& net) {
    ThroughputReport report;
    std::vector<double> load(net.connections().size(), 0.0);
    for (const auto& sol : solutions) {
        double required = 0.0;
        for (const auto& d : demands)
            if (d.user == sol.user) required = d.required_throughput;
        for (std::size_t e = 0; e < load.size(); ++e) {
            const double uses = (sol.main_uses_edge(static_cast<std::uint32_t>(e)) ? 1.0 : 0.0) +
                                (sol.replacement_uses_edge(static_cast<std::uint32_t>(e)) ? 1.0 : 0.0);
            load[e] += uses * required;
        }
    }
    for (std::size_t e = 0; e < load.size(); ++e) {
        const double cap = net.connections()[e].throughput;
        if (load[e] > cap) {
            report.ok = false;
            report.violations.push_back({static_cast<std::uint32_t>(e), load[e], cap});
        }
    }
    return report;
}

struct DisjointReport {
    bool ok = true;
    std::optional<NodeId> shared_node;
    std::optional<std::uint32_t> shared_connection;
};

// Node-disjointness means disjoint interiors (shared endpoints are inherent);
// additionally no connection may be used by two paths of the set.
inline DisjointReport validate_disjointness(const DisjointPathSet& set) {
    DisjointReport report;
    std::set<NodeId> interiors;
    std::set<std::uint32_t> connections;
    for (const auto& path : set.paths) {
        for (auto v : path.interior()) {
            if (!interiors.insert(v).second) {
                report.ok = false;
                if (!report.shared_node) report.shared_node = v;
            }
        }
        for (auto e : path.edges) {
            if (!connections.insert(e).second) {
                report.ok = false;
                if (!report.shared_connection) report.shared_connection = e;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Desk-scale enumeration: exact optimum for the disjoint path set objective
// ---------------------------------------------------------------------------

struct GapResult {
    bool oracle_feasible = false;
    bool heuristic_complete = false;
    double heuristic_total = 0.0;
    double optimal_total = 0.0;
    double gap = 0.0;
};

namespace detail {

struct EnumPath {
    std::vector<NodeId> nodes;
    std::vector<std::uint32_t> edges;
    std::uint64_t interior_mask = 0;
    std::uint64_t edge_mask = 0;
    double main_cost = 0.0;
    double repl_cost = 0.0;
    bool hub_free = true;
};

inline std::vector<EnumPath> enumerate_paths(const BaseGraph& g, const CostModel& cm, NodeId source,
                                             NodeId target, const std::vector<NodeId>& hubs,
                                             const std::vector<NodeId>& forbidden,
                                             std::size_t path_cap) {
    if (g.node_count() > 16)
        throw ConfigError("path enumeration limited to graphs of at most 16 nodes");
    if (g.edges.size() > 64) throw ConfigError("path enumeration limited to 64 connections");

    std::uint64_t hub_mask = 0;
    for (auto v : hubs) hub_mask |= std::uint64_t{1} << v;
    std::uint64_t forbidden_mask = 0;
    for (auto v : forbidden) forbidden_mask |= std::uint64_t{1} << v;

    std::vector<EnumPath> out;
    std::vector<NodeId> stack{source};
    std::vector<std::uint32_t> edge_stack;
    std::uint64_t visited = std::uint64_t{1} << source;

    std::function<void()> dfs = [&] {
        if (out.size() >= path_cap)
            throw ConfigError("path enumeration cap exceeded");
        const NodeId v = stack.back();
        if (v == target) {
            EnumPath p;
            p.nodes = stack;
            p.edges = edge_stack;
            for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
                p.interior_mask |= std::uint64_t{1} << p.nodes[i];
                if (hub_mask & (std::uint64_t{1} << p.nodes[i])) p.hub_free = false;
            }
            for (auto e : p.edges) {
                p.edge_mask |= std::uint64_t{1} << e;
                p.main_cost += cm.main_cost[e];
                p.repl_cost += cm.repl_cost[e];
            }
            out.push_back(std::move(p));
            return;
        }
        for (auto e : g.incident[v]) {
            const NodeId u = g.edges[e].other(v);
            if (visited & (std::uint64_t{1} << u)) continue;
            if (forbidden_mask & (std::uint64_t{1} << u)) continue;
            visited |= std::uint64_t{1} << u;
            stack.push_back(u);
            edge_stack.push_back(e);
            dfs();
            edge_stack.pop_back();
            stack.pop_back();
            visited &= ~(std::uint64_t{1} << u);
        }
    };
    dfs();
    return out;
}

inline bool compatible(const EnumPath& a, const EnumPath& b) {
    return (a.interior_mask & b.interior_mask) == 0 && (a.edge_mask & b.edge_mask) == 0;
}

} // namespace detail

// Compares the heuristic against exhaustive enumeration of all z-tuples of
// pairwise interior- and connection-disjoint paths, costing the first tuple
// slot with the main coefficient (hub-free in demand context) and the rest
// with the replacement coefficient. Only intended for instances small enough
// to enumerate.
inline GapResult optimality_gap(const BaseGraph& g, const CostModel& cm, NodeId source,
                                NodeId target, const SolveOptions& options) {
    GapResult result;

    const auto z = static_cast<std::size_t>(options.z);
    const bool demand_context = options.context == SolveContext::demand_main;
    const auto paths = detail::enumerate_paths(g, cm, source, target, options.hub_nodes,
                                               options.forbidden_nodes, 200000);

    double best = std::numeric_limits<double>::infinity();
    std::vector<const detail::EnumPath*> chosen;
    std::function<void(std::size_t, double)> search = [&](std::size_t slot, double cost) {
        if (cost >= best) return;
        if (slot == z) {
            best = cost;
            return;
        }
        for (const auto& p : paths) {
            if (slot == 0 && demand_context && !p.hub_free) continue;
            bool ok = true;
            for (const auto* q : chosen)
                if (!detail::compatible(*q, p)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(&p);
            search(slot + 1, cost + (slot == 0 && demand_context ? p.main_cost : p.repl_cost));
            chosen.pop_back();
        }
    };
    search(0, 0.0);

    result.oracle_feasible = std::isfinite(best);
    if (result.oracle_feasible) result.optimal_total = best;

    try {
        const DisjointPathSet heuristic = find_disjoint_paths(g, cm, source, target, options);
        result.heuristic_complete = heuristic.complete;
        if (heuristic.complete) result.heuristic_total = heuristic.total_cost;
    } catch (const NoMainPathError&) {
        result.heuristic_complete = false;
    }

    if (result.oracle_feasible && result.heuristic_complete)
        result.gap = result.heuristic_total - result.optimal_total;
    return result;
}

} // namespace entroute
