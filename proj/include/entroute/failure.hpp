#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/cost_model.hpp"
#include "entroute/disjoint.hpp"
#include "entroute/errors.hpp"
#include "entroute/overlay.hpp"
#include "entroute/routing.hpp"

namespace entroute {

// A quantum memory failure: the node loses every entangled contact at once.
struct FailureEvent {
    NodeId failed_node = 0;
    std::int64_t tick = 0;
    // destroyed connections with their indices in the original network, so a
    // restore rebuilds the exact original sequence
    std::vector<std::pair<std::size_t, EntangledConnection>> destroyed;
    std::vector<NodeId> affected_nodes; // far endpoints of destroyed connections

    std::size_t destroyed_count() const { return destroyed.size(); }
};

// Removes every connection incident to the node. The original network is
// untouched; the returned view is an independent snapshot.
inline std::pair<FailureEvent, OverlayNetwork> inject_failure(const OverlayNetwork& net,
                                                              NodeId node,
                                                              std::int64_t tick = 0) {
    if (node >= net.node_count()) throw NotFoundError("unknown node " + std::to_string(node));

    FailureEvent event;
    event.failed_node = node;
    event.tick = tick;

    std::set<NodeId> affected;
    std::vector<EntangledConnection> remaining;
    remaining.reserve(net.connections().size());
    for (std::size_t i = 0; i < net.connections().size(); ++i) {
        const auto& c = net.connections()[i];
        if (c.touches(node)) {
            event.destroyed.emplace_back(i, c);
            affected.insert(c.other(node));
        } else {
            remaining.push_back(c);
        }
    }
    event.affected_nodes.assign(affected.begin(), affected.end());
    return {std::move(event), net.with_connections(std::move(remaining))};
}

// Number of entangled contacts the node would lose if its memory failed.
inline int loss_count(const OverlayNetwork& net, NodeId node) { return net.degree(node); }

// Rebuilds the pre-failure network from a post-failure view by reinserting
// the destroyed connections at their original indices.
inline OverlayNetwork reinstate(const OverlayNetwork& view, const FailureEvent& event) {
    std::vector<EntangledConnection> conns(view.connections().begin(), view.connections().end());
    for (const auto& [index, conn] : event.destroyed)
        conns.insert(conns.begin() + static_cast<std::ptrdiff_t>(std::min(index, conns.size())),
                     conn);
    return view.with_connections(std::move(conns));
}

enum class PlanStatus { active, restored, failed };

// Switchover around a failed main-path node: a set of replacement paths
// between the two main-path nodes that bracket every destroyed main-path
// connection.
struct SwitchoverPlan {
    Route main;
    FailureEvent event;
    NodeId replacement_source = 0;
    NodeId replacement_target = 0;
    DisjointPathSet replacements;
    PlanStatus status = PlanStatus::failed;
    std::string diagnostics;
    OverlayNetwork working_view;
};

struct SwitchoverOptions {
    int z = 1;
    int max_concurrences = 1;
    // stricter mode: nodes that lost a contact are excluded from replacement
    // transit as well (the failed node always is)
    bool forbid_affected = false;
};

// Replacement endpoints: over the destroyed connections whose both endpoints
// lie on the main path, take the earliest and latest touched main-path
// positions. Long-range contacts of the failed node with non-adjacent
// main-path nodes widen the bracket accordingly.
inline std::optional<std::pair<NodeId, NodeId>> switchover_endpoints(const Route& main,
                                                                     const FailureEvent& event) {
    auto pos_of = [&](NodeId v) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < main.nodes.size(); ++i)
            if (main.nodes[i] == v) return i;
        return std::nullopt;
    };

    std::optional<std::size_t> lo, hi;
    for (const auto& [index, conn] : event.destroyed) {
        (void)index;
        const auto pa = pos_of(conn.a);
        const auto pb = pos_of(conn.b);
        if (!pa || !pb) continue; // only connections spanning the main path
        const auto first = std::min(*pa, *pb);
        const auto last = std::max(*pa, *pb);
        lo = lo ? std::min(*lo, first) : first;
        hi = hi ? std::max(*hi, last) : last;
    }
    if (!lo || !hi) return std::nullopt;
    return std::pair{main.nodes[*lo], main.nodes[*hi]};
}

// Plans the reaction to a failure event. The caller supplies the post-failure
// network view together with its embedding and recomputed cost model (the
// main path's own costs stay whatever they were at establishment time).
inline SwitchoverPlan plan_switchover(const Route& main, const FailureEvent& event,
                                      const OverlayNetwork& original,
                                      const OverlayNetwork& post_view,
                                      const BaseGraph& post_graph, const CostModel& post_cm,
                                      const SwitchoverOptions& options) {
    SwitchoverPlan plan;
    plan.main = main;
    plan.event = event;
    plan.working_view = post_view;

    if (!main.contains(event.failed_node)) {
        // the main path is untouched; transmission never leaves it
        plan.status = PlanStatus::restored;
        plan.working_view = original;
        plan.diagnostics = "failed node not on the main path";
        return plan;
    }
    if (!main.nodes.empty() &&
        (event.failed_node == main.nodes.front() || event.failed_node == main.nodes.back())) {
        plan.status = PlanStatus::failed;
        plan.diagnostics = "failure at a demand endpoint cannot be bridged by a replacement";
        return plan;
    }

    const auto endpoints = switchover_endpoints(main, event);
    if (!endpoints) {
        plan.status = PlanStatus::failed;
        plan.diagnostics = "no destroyed connection spans the main path";
        return plan;
    }
    plan.replacement_source = endpoints->first;
    plan.replacement_target = endpoints->second;

    SolveOptions solve;
    solve.z = options.z;
    solve.max_concurrences = options.max_concurrences;
    solve.context = SolveContext::replacement_only;
    solve.forbidden_nodes.push_back(event.failed_node);
    if (options.forbid_affected) {
        for (auto v : event.affected_nodes)
            if (v != plan.replacement_source && v != plan.replacement_target)
                solve.forbidden_nodes.push_back(v);
    }

    try {
        plan.replacements = find_disjoint_paths(post_graph, post_cm, plan.replacement_source,
                                                plan.replacement_target, solve);
        if (plan.replacements.paths.empty()) {
            plan.status = PlanStatus::failed;
            plan.diagnostics = "no replacement path: " + plan.replacements.status;
        } else {
            plan.status = PlanStatus::active;
            if (!plan.replacements.complete)
                plan.diagnostics = "partial replacement set: " + plan.replacements.status;
        }
    } catch (const NoMainPathError& e) {
        plan.status = PlanStatus::failed;
        plan.diagnostics = e.what();
    }
    return plan;
}

// Reinstates the destroyed connections and hands transmission back to the
// main path. Restoring an already-restored plan is a no-op.
inline SwitchoverPlan restore(SwitchoverPlan plan) {
    if (plan.status == PlanStatus::restored) return plan;
    plan.working_view = reinstate(plan.working_view, plan.event);
    plan.status = PlanStatus::restored;
    return plan;
}

} // namespace entroute
