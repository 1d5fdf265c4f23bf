#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/errors.hpp"
#include "entroute/generate.hpp"
#include "entroute/overlay.hpp"

namespace entroute {

// A route through the base-graph: node sequence plus the traversed edges.
struct Route {
    std::vector<NodeId> nodes;
    std::vector<std::uint32_t> edges;
    double total_cost = 0.0;

    int steps() const { return static_cast<int>(nodes.empty() ? 0 : nodes.size() - 1); }
    bool contains(NodeId v) const {
        for (auto n : nodes)
            if (n == v) return true;
        return false;
    }
    // nodes strictly between source and target
    std::vector<NodeId> interior() const {
        if (nodes.size() <= 2) return {};
        return {nodes.begin() + 1, nodes.end() - 1};
    }
};

class NodeMask {
public:
    NodeMask() = default;
    explicit NodeMask(std::size_t n) : bits_(n, 0) {}
    void set(NodeId v) {
        if (v >= bits_.size()) bits_.resize(static_cast<std::size_t>(v) + 1, 0);
        bits_[v] = 1;
    }
    bool test(NodeId v) const { return v < bits_.size() && bits_[v] != 0; }

private:
    std::vector<char> bits_;
};

// Step budget for a greedy route on an n-sized base-graph; safety factor 4
// over the average-case polylog bound.
inline std::int64_t greedy_ttl(std::int64_t n) {
    if (n <= 1) return 1;
    const double lg = std::log2(static_cast<double>(n));
    return static_cast<std::int64_t>(std::ceil(4.0 * lg * lg));
}

struct NeighborRef {
    NodeId node = 0;
    std::uint32_t edge = 0;
    double selection_cost = 0.0; // preference key, lower is better
    bool admissible = true;
};

// Plain base-graph view: every edge admissible, no cost preference; the
// greedy decision reduces to pure L1 descent with lowest-id tie-breaking.
class BaseGraphView {
public:
    explicit BaseGraphView(const BaseGraph& g) : g_(g) {}
    std::int64_t capacity() const { return g_.capacity; }
    std::size_t node_count() const { return g_.node_count(); }
    const LatticePosition& position(NodeId v) const { return g_.position(v); }
    template <class F>
    void for_each_neighbor(NodeId v, F&& f) const {
        for (auto e : g_.incident[v]) f(NeighborRef{g_.edges[e].other(v), e, 0.0, true});
    }

private:
    const BaseGraph& g_;
};

// Scaled-graph view: edges without a finite inverted distance are excluded
// from candidate moves, and among admissible moves the working cost of the
// edge is the preference key, so accumulated penalties steer routes away
// from already-used regions.
class ScaledGraphView {
public:
    explicit ScaledGraphView(const ScaledBaseGraph& s) : s_(s) {}
    std::int64_t capacity() const { return s_.base->capacity; }
    std::size_t node_count() const { return s_.base->node_count(); }
    const LatticePosition& position(NodeId v) const { return s_.base->position(v); }
    template <class F>
    void for_each_neighbor(NodeId v, F&& f) const {
        for (auto e : s_.base->incident[v]) {
            const bool ok = std::isfinite(s_.effective_distance[e]);
            f(NeighborRef{s_.base->edges[e].other(v), e, s_.working_cost[e], ok});
        }
    }

private:
    const ScaledBaseGraph& s_;
};

// Decentralized greedy routing: from the current node, step to the admissible
// unvisited neighbor that is strictly closer to the target, preferring the
// lowest selection cost and breaking ties by remaining distance and then by
// node id. Each decision only inspects the current node's incident edges, the
// neighbors' positions, and the target position.
template <class View>
Route greedy_route(const View& view, NodeId source, NodeId target, const NodeMask& forbidden = {}) {
    if (forbidden.test(source) || forbidden.test(target))
        throw RoutingError("route endpoint is forbidden", source);

    Route route;
    route.nodes.push_back(source);
    if (source == target) return route;

    const LatticePosition target_pos = view.position(target);
    const std::int64_t ttl = greedy_ttl(view.capacity());

    NodeMask visited(view.node_count());
    visited.set(source);
    NodeId current = source;
    std::int64_t remaining = l1_distance(view.position(source), target_pos);

    while (current != target) {
        bool found = false;
        NeighborRef best{};
        std::int64_t best_distance = 0;
        view.for_each_neighbor(current, [&](const NeighborRef& nb) {
            if (!nb.admissible || visited.test(nb.node) || forbidden.test(nb.node)) return;
            const std::int64_t d = l1_distance(view.position(nb.node), target_pos);
            if (d >= remaining) return; // only strictly-closer moves
            const bool better =
                !found || nb.selection_cost < best.selection_cost ||
                (nb.selection_cost == best.selection_cost &&
                 (d < best_distance || (d == best_distance && nb.node < best.node)));
            if (better) {
                best = nb;
                best_distance = d;
                found = true;
            }
        });
        if (!found)
            throw RoutingError("greedy routing stuck at node " + std::to_string(current), current);

        current = best.node;
        remaining = best_distance;
        visited.set(current);
        route.nodes.push_back(current);
        route.edges.push_back(best.edge);
        route.total_cost += best.selection_cost;
        if (static_cast<std::int64_t>(route.edges.size()) > ttl)
            throw TtlError("greedy route exceeded step budget of " + std::to_string(ttl));
    }
    return route;
}

// Mean greedy step count over random source/target pairs on graphs drawn
// from the requested family.
struct StepCountConfig {
    enum class Family { lattice_power_law, complete };
    Family family = Family::lattice_power_law;
    int dimension = 2;
    std::int32_t side = 16;
    int long_range_contacts = 1;
};

struct StepStats {
    double mean_steps = 0.0;
    int trials = 0;
    int completed = 0;
    int dead_ends = 0;
};

inline StepStats average_step_count(const StepCountConfig& config, int trials, std::uint64_t seed) {
    if (trials < 1) throw ConfigError("step count measurement needs trials >= 1");

    std::size_t n = 1;
    for (int i = 0; i < config.dimension; ++i) n *= static_cast<std::size_t>(config.side);

    auto build = [&](std::uint64_t graph_seed) {
        OverlayNetwork net = [&] {
            if (config.family == StepCountConfig::Family::complete) {
                std::vector<EntangledConnection> conns;
                for (NodeId a = 0; a < n; ++a)
                    for (NodeId b = a + 1; b < n; ++b)
                        conns.push_back({a, b, 1, 0.9, 1.0, 0.99});
                return OverlayNetwork(n, std::move(conns), {{1, 0.05}}, DegreeThreshold{});
            }
            LatticeFamilyParams params;
            params.dimension = config.dimension;
            params.side = config.side;
            params.long_range_contacts = config.long_range_contacts;
            return lattice_small_world(params, graph_seed);
        }();
        auto coords = lattice_identity_coords(config.dimension, config.side);
        std::vector<LatticePosition> placement(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) placement[i].coords = coords[i];
        return embed_overlay(net, config.dimension, static_cast<std::int64_t>(n),
                             std::move(placement));
    };

    RandomStream rng(seed, "step-count");
    const int graphs = std::clamp(trials / 50, 1, 16);
    std::vector<BaseGraph> pool;
    pool.reserve(static_cast<std::size_t>(graphs));
    for (int i = 0; i < graphs; ++i) pool.push_back(build(rng.next_u64()));

    StepStats stats;
    stats.trials = trials;
    std::int64_t total_steps = 0;
    for (int t = 0; t < trials; ++t) {
        const auto& g = pool[static_cast<std::size_t>(t % graphs)];
        const auto s = static_cast<NodeId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        auto u = static_cast<NodeId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 2));
        if (u >= s) ++u;
        try {
            Route r = greedy_route(BaseGraphView(g), s, u);
            total_steps += r.steps();
            ++stats.completed;
        } catch (const RoutingError&) {
            ++stats.dead_ends;
        } catch (const TtlError&) {
            ++stats.dead_ends;
        }
    }
    if (stats.completed == 0)
        throw MeasurementError("all routing trials dead-ended", 1.0);
    stats.mean_steps = static_cast<double>(total_steps) / stats.completed;
    return stats;
}

} // namespace entroute
