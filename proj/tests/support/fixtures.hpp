#pragma once

// Shared test topologies. Placements are chosen so that level/hop
// consistency holds wherever a test depends on it.

#include <cstdint>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/generate.hpp"
#include "entroute/overlay.hpp"
#include "entroute/routing.hpp"

namespace fixtures {

using entroute::BaseGraph;
using entroute::DegreeThreshold;
using entroute::EntangledConnection;
using entroute::LatticePosition;
using entroute::NodeId;
using entroute::OverlayNetwork;

// Low thresholds keep low-probability fixture edges legal.
inline std::map<int, double> loose_thresholds() {
    return {{1, 0.05}, {2, 0.05}, {3, 0.05}, {4, 0.05}};
}

// Hand-built micro-fixtures opt out of the quantile hub rule: on a 3-node
// path graph the middle node would land above the 90th percentile.
inline DegreeThreshold no_hubs() { return {DegreeThreshold::Kind::absolute, 0.0, 99}; }

struct Instance {
    OverlayNetwork net;
    int dimension = 2;
    std::int64_t size = 0;
    std::vector<LatticePosition> placement;

    BaseGraph embed(bool strict = false) const {
        entroute::EmbedOptions options;
        options.strict_levels = strict;
        return entroute::embed_overlay(net, dimension, size, placement, options);
    }
};

inline LatticePosition at(std::int32_t x, std::int32_t y) { return {{x, y}}; }

inline EntangledConnection conn(NodeId a, NodeId b, int level, double prob, double q_f = 10.0) {
    return {a, b, level, prob, q_f, 0.98};
}

// a(0) - b(1) - c(2) in a row
inline Instance path3(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(3, {conn(0, 1, 1, prob), conn(1, 2, 1, prob)}, loose_thresholds(),
                           no_hubs());
    f.size = 9;
    f.placement = {at(0, 0), at(1, 0), at(2, 0)};
    return f;
}

// s(0), a(1), b(2), t(3): two interior-disjoint arms s-a-t and s-b-t
inline Instance diamond(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(
        4, {conn(0, 1, 1, prob), conn(0, 2, 1, prob), conn(1, 3, 1, prob), conn(2, 3, 1, prob)},
        loose_thresholds(), no_hubs());
    f.size = 4;
    f.placement = {at(0, 0), at(1, 0), at(0, 1), at(1, 1)};
    return f;
}

// s(0) - m(1) - t(2): every s-t path crosses m
inline Instance bridge(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(3, {conn(0, 1, 1, prob), conn(1, 2, 1, prob)}, loose_thresholds(),
                           no_hubs());
    f.size = 9;
    f.placement = {at(0, 0), at(1, 0), at(2, 0)};
    return f;
}

// K4 on s(0), a(1), b(2), t(3) minus the direct s-t edge
inline Instance k4_minus(double prob = 0.3) {
    Instance f;
    f.net = OverlayNetwork(4, {conn(0, 1, 1, prob), conn(0, 2, 1, prob), conn(1, 3, 1, prob),
                               conn(2, 3, 1, prob), conn(1, 2, 2, prob)},
                           loose_thresholds(), no_hubs());
    f.size = 4;
    f.placement = {at(0, 0), at(1, 0), at(0, 1), at(1, 1)};
    return f;
}

// a(0) - b(1) - c(2) - d(3) - a
inline Instance four_cycle(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(
        4, {conn(0, 1, 1, prob), conn(1, 2, 1, prob), conn(2, 3, 1, prob), conn(0, 3, 1, prob)},
        loose_thresholds(), no_hubs());
    f.size = 4;
    f.placement = {at(0, 0), at(1, 0), at(1, 1), at(0, 1)};
    return f;
}

// hub(0) with 5 leaves (1..5)
inline Instance star5(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(6, {conn(0, 1, 1, prob), conn(0, 2, 1, prob), conn(0, 3, 1, prob),
                               conn(0, 4, 1, prob), conn(0, 5, 2, prob)},
                           loose_thresholds(), no_hubs());
    f.size = 9;
    f.placement = {at(1, 1), at(0, 1), at(2, 1), at(1, 0), at(1, 2), at(0, 0)};
    return f;
}

// Multi-level repeater chain with two high-degree nodes off the main row.
//
//   A(0) R1(1) R2(2) R3(3) R4(4) R5(5) R6(6) R7(7) R8(8) B(9)   on row y=0
//                                       H1(10) at (7,1), H2(11) at (8,1)
//
// Main path A..B runs the chain and skips R7 via the level-2 hop R6-R8.
// R6 also holds a level-3 long-range contact back to R2. Every path from R2
// to R8 that avoids R6 crosses at least one high-degree node.
struct Fig1 {
    Instance instance;
    entroute::Route main;
    NodeId a = 0, r1 = 1, r2 = 2, r3 = 3, r4 = 4, r5 = 5, r6 = 6, r7 = 7, r8 = 8, b = 9,
           h1 = 10, h2 = 11;
};

inline Fig1 repeater_chain(double prob = 0.2) {
    Fig1 f;
    Instance& inst = f.instance;
    inst.net = OverlayNetwork(12, {
                                      conn(0, 1, 1, prob),   // 0 A-R1
                                      conn(1, 2, 1, prob),   // 1 R1-R2
                                      conn(2, 3, 1, prob),   // 2 R2-R3
                                      conn(3, 4, 1, prob),   // 3 R3-R4
                                      conn(4, 5, 1, prob),   // 4 R4-R5
                                      conn(5, 6, 1, prob),   // 5 R5-R6
                                      conn(6, 8, 2, prob),   // 6 R6-R8 (skips R7)
                                      conn(8, 9, 1, prob),   // 7 R8-B
                                      conn(2, 6, 3, prob),   // 8 R2-R6 long range
                                      conn(10, 1, 3, prob),  // 9 H1-R1
                                      conn(10, 3, 3, prob),  // 10 H1-R3
                                      conn(10, 4, 3, prob),  // 11 H1-R4
                                      conn(10, 5, 2, prob),  // 12 H1-R5
                                      conn(10, 9, 2, prob),  // 13 H1-B
                                      conn(10, 11, 1, prob), // 14 H1-H2
                                      conn(11, 7, 2, prob),  // 15 H2-R7
                                      conn(11, 8, 1, prob),  // 16 H2-R8
                                      conn(11, 9, 2, prob),  // 17 H2-B
                                  },
                              loose_thresholds(), DegreeThreshold{});
    inst.size = 100;
    inst.placement = {at(0, 0), at(1, 0), at(2, 0), at(3, 0), at(4, 0), at(5, 0),
                      at(6, 0), at(7, 0), at(8, 0), at(9, 0), at(7, 1), at(8, 1)};

    f.main.nodes = {0, 1, 2, 3, 4, 5, 6, 8, 9};
    f.main.edges = {0, 1, 2, 3, 4, 5, 6, 7};
    return f;
}

// Dead-end pocket: routing from s toward t enters x and has nowhere to go.
inline Instance dead_end_pocket(double prob = 0.6) {
    Instance f;
    f.net = OverlayNetwork(3, {conn(0, 1, 2, prob)}, loose_thresholds(), no_hubs());
    f.size = 16;
    f.placement = {at(0, 0), at(2, 0), at(3, 0)};
    return f;
}

// 5x5 grid with unit-level nearest-neighbor connections, node (x,y) = 5y+x.
inline Instance grid5(double prob = 0.6) {
    Instance f;
    std::vector<EntangledConnection> conns;
    auto id = [](std::int32_t x, std::int32_t y) { return static_cast<NodeId>(5 * y + x); };
    for (std::int32_t y = 0; y < 5; ++y) {
        for (std::int32_t x = 0; x < 5; ++x) {
            if (x + 1 < 5) conns.push_back(conn(id(x, y), id(x + 1, y), 1, prob));
            if (y + 1 < 5) conns.push_back(conn(id(x, y), id(x, y + 1), 1, prob));
        }
    }
    f.net = OverlayNetwork(25, std::move(conns), loose_thresholds(), no_hubs());
    f.size = 25;
    f.placement.resize(25);
    for (std::int32_t y = 0; y < 5; ++y)
        for (std::int32_t x = 0; x < 5; ++x) f.placement[id(x, y)] = at(x, y);
    return f;
}

// Small-world lattice instance with identity placement: the connectivity the
// routing model is built for. Low probabilities keep the scaled-graph
// inversion admissible on most edges.
inline Instance small_world(std::int32_t side, int extra_contacts, std::uint64_t seed) {
    entroute::LatticeFamilyParams params;
    params.dimension = 2;
    params.side = side;
    params.long_range_contacts = extra_contacts;
    params.grid_probability = 0.1;
    params.long_range_probability = 0.08;
    Instance f;
    f.net = entroute::lattice_small_world(params, seed);
    f.size = static_cast<std::int64_t>(side) * side;
    auto coords = entroute::lattice_identity_coords(2, side);
    f.placement.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) f.placement[i].coords = coords[i];
    return f;
}

// The worked three-node embedding: x(0) with a level-2 contact y(1) at
// distance 2 and a level-1 contact z(2) at distance 1.
inline Instance three_node_embed() {
    Instance f;
    f.net = OverlayNetwork(3, {conn(0, 1, 2, 0.8), conn(0, 2, 1, 0.6)});
    f.size = 9;
    f.placement = {at(0, 0), at(0, 2), at(1, 0)};
    return f;
}

} // namespace fixtures
