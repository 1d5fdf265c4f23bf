#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "entroute/errors.hpp"
#include "entroute/overlay.hpp"
#include "entroute/rng.hpp"

namespace entroute {

// Cell coordinates of an overlay node mapped into the k-dimensional lattice.
struct LatticePosition {
    std::vector<std::int32_t> coords;
};

inline std::int64_t l1_distance(const LatticePosition& a, const LatticePosition& b) {
    if (a.coords.size() != b.coords.size())
        throw GeometryError("lattice positions have different dimensions (" +
                            std::to_string(a.coords.size()) + " vs " +
                            std::to_string(b.coords.size()) + ")");
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        d += std::abs(static_cast<std::int64_t>(a.coords[i]) - b.coords[i]);
    return d;
}

// An overlay connection after embedding. The probability decomposes as
// power_term + offset, where power_term = d^(-k) / normalizer and the offset
// constant absorbs the rest; the decomposition reproduces the overlay
// probability identically and is invertible back to the lattice distance.
struct EmbeddedEdge {
    NodeId a = 0;
    NodeId b = 0;
    int level = 1;
    double probability = 1.0; // overlay connection probability
    double power_term = 0.0;  // d^(-k) / H_n of the listed first endpoint
    double offset = 0.0;      // probability - power_term
    double normalizer = 0.0;  // H_n used for this edge
    std::int64_t lattice_distance = 0;
    double throughput = 0.0;
    double fidelity = 1.0;

    NodeId other(NodeId v) const { return v == a ? b : a; }
};

struct EmbedOptions {
    bool strict_levels = false; // reject level/distance inconsistencies instead of warning
};

class BaseGraph {
public:
    int dimension = 2;
    std::int64_t capacity = 0; // lattice cell count n
    std::int32_t side = 0;     // n^(1/k)
    std::vector<LatticePosition> placement; // indexed by NodeId
    std::vector<EmbeddedEdge> edges;
    std::vector<double> normalizers; // H_n per node
    std::vector<std::vector<std::uint32_t>> incident; // node -> edge indices
    std::vector<std::string> level_warnings;

    std::size_t node_count() const { return placement.size(); }

    const LatticePosition& position(NodeId v) const {
        if (v >= placement.size()) throw NotFoundError("node " + std::to_string(v) + " not placed");
        return placement[v];
    }

    const EmbeddedEdge* find_edge(NodeId x, NodeId y) const {
        if (x >= incident.size()) return nullptr;
        for (auto e : incident[x])
            if (edges[e].other(x) == y) return &edges[e];
        return nullptr;
    }
};

namespace detail {

inline std::int32_t lattice_side(int k, std::int64_t n) {
    if (k < 1) throw ConfigError("lattice dimension must be >= 1");
    if (n < 1) throw ConfigError("lattice size must be >= 1");
    auto side = static_cast<std::int32_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    std::int64_t check = 1;
    for (int i = 0; i < k; ++i) check *= side;
    if (check != n)
        throw ConfigError("lattice size " + std::to_string(n) + " is not a perfect " +
                          std::to_string(k) + "-th power");
    return side;
}

inline std::int64_t cell_index(const LatticePosition& p, std::int32_t side) {
    std::int64_t idx = 0;
    for (auto c : p.coords) idx = idx * side + c;
    return idx;
}

} // namespace detail

// Maps an overlay network into the k-dimensional n-sized lattice under an
// explicit placement and derives the per-edge probability decomposition. The
// normalizer of a node sums the lattice distances to all of its entangled
// contacts, one term per connection.
inline BaseGraph embed_overlay(const OverlayNetwork& net, int k, std::int64_t n,
                               std::vector<LatticePosition> placement,
                               const EmbedOptions& options = {}) {
    BaseGraph g;
    g.dimension = k;
    g.capacity = n;
    g.side = detail::lattice_side(k, n);
    if (static_cast<std::int64_t>(net.node_count()) > n)
        throw CapacityError("lattice of size " + std::to_string(n) + " cannot hold " +
                            std::to_string(net.node_count()) + " nodes");
    if (placement.size() != net.node_count())
        throw EmbeddingError("placement covers " + std::to_string(placement.size()) +
                             " nodes, network has " + std::to_string(net.node_count()));

    std::vector<char> occupied(static_cast<std::size_t>(n), 0);
    for (std::size_t v = 0; v < placement.size(); ++v) {
        const auto& pos = placement[v];
        if (static_cast<int>(pos.coords.size()) != k)
            throw EmbeddingError("node " + std::to_string(v) + ": position has wrong dimension");
        for (auto c : pos.coords)
            if (c < 0 || c >= g.side)
                throw EmbeddingError("node " + std::to_string(v) + ": coordinate out of bounds");
        const auto cell = static_cast<std::size_t>(detail::cell_index(pos, g.side));
        if (occupied[cell])
            throw EmbeddingError("placement collision at cell of node " + std::to_string(v));
        occupied[cell] = 1;
    }
    g.placement = std::move(placement);

    g.normalizers.assign(net.node_count(), 0.0);
    for (const auto& c : net.connections()) {
        const auto d = l1_distance(g.placement[c.a], g.placement[c.b]);
        g.normalizers[c.a] += static_cast<double>(d);
        g.normalizers[c.b] += static_cast<double>(d);
    }

    g.incident.assign(net.node_count(), {});
    g.edges.reserve(net.connections().size());
    for (const auto& c : net.connections()) {
        EmbeddedEdge e;
        e.a = c.a;
        e.b = c.b;
        e.level = c.level;
        e.probability = c.probability;
        e.lattice_distance = l1_distance(g.placement[c.a], g.placement[c.b]);
        e.normalizer = g.normalizers[c.a];
        e.power_term = std::pow(static_cast<double>(e.lattice_distance), -k) / e.normalizer;
        e.offset = c.probability - e.power_term;
        e.throughput = c.throughput;
        e.fidelity = c.fidelity;

        if (e.lattice_distance != hop_distance(c.level)) {
            const std::string msg = "connection (" + std::to_string(c.a) + "," +
                                    std::to_string(c.b) + ") level " + std::to_string(c.level) +
                                    " expects lattice distance " +
                                    std::to_string(hop_distance(c.level)) + ", placed at " +
                                    std::to_string(e.lattice_distance);
            if (options.strict_levels) throw EmbeddingError(msg);
            g.level_warnings.push_back(msg);
        }

        const auto idx = static_cast<std::uint32_t>(g.edges.size());
        g.edges.push_back(e);
        g.incident[c.a].push_back(idx);
        g.incident[c.b].push_back(idx);
    }
    return g;
}

// Seeded-random placement: distinct cells drawn uniformly.
inline BaseGraph embed_overlay(const OverlayNetwork& net, int k, std::int64_t n,
                               RandomStream& placement_rng, const EmbedOptions& options = {}) {
    const auto side = detail::lattice_side(k, n);
    if (static_cast<std::int64_t>(net.node_count()) > n)
        throw CapacityError("lattice of size " + std::to_string(n) + " cannot hold " +
                            std::to_string(net.node_count()) + " nodes");
    std::vector<std::int64_t> cells(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) cells[static_cast<std::size_t>(i)] = i;
    std::vector<LatticePosition> placement(net.node_count());
    for (std::size_t v = 0; v < net.node_count(); ++v) {
        const auto pick = static_cast<std::size_t>(
            placement_rng.uniform_int(static_cast<std::int64_t>(v), n - 1));
        std::swap(cells[v], cells[pick]);
        LatticePosition pos;
        pos.coords.resize(static_cast<std::size_t>(k));
        auto rem = cells[v];
        for (int i = k - 1; i >= 0; --i) {
            pos.coords[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rem % side);
            rem /= side;
        }
        placement[v] = std::move(pos);
    }
    return embed_overlay(net, k, n, std::move(placement), options);
}

// Probability of one embedded connection, reassembled from the stored
// decomposition; equals the overlay probability by construction.
inline double edge_probability(const BaseGraph& g, std::uint32_t edge_index) {
    if (edge_index >= g.edges.size())
        throw NotFoundError("no embedded connection with index " + std::to_string(edge_index));
    return g.edges[edge_index].power_term + g.edges[edge_index].offset;
}

// Pair form. With parallel connections at several levels the lowest-indexed
// one answers; use edge_probability to address a specific level.
inline double connection_probability(const BaseGraph& g, NodeId x, NodeId y) {
    if (x >= g.incident.size())
        throw NotFoundError("no embedded connection between " + std::to_string(x) + " and " +
                            std::to_string(y));
    for (auto e : g.incident[x])
        if (g.edges[e].other(x) == y) return edge_probability(g, e);
    throw NotFoundError("no embedded connection between " + std::to_string(x) + " and " +
                        std::to_string(y));
}

constexpr double kInversionPoleTolerance = 1e-12;

// Inverts the probability law back to the lattice distance:
// d = (1 / (H_n * (p - c)))^(1/k). Diverges as p approaches c.
inline double distance_from_probability(double p, double c, double h_n, int k) {
    if (k < 1) throw ConfigError("dimension must be >= 1");
    if (h_n <= 0.0) throw DomainError("normalizer must be positive");
    if (p - c < kInversionPoleTolerance)
        throw SingularityError("probability too close to the offset constant (p - c = " +
                               std::to_string(p - c) + ")");
    return std::pow(1.0 / (h_n * (p - c)), 1.0 / k);
}

// Base-graph variant whose per-edge distances come from scaled working costs
// instead of probabilities. Positions are kept from the source graph; each
// edge carries the target distance obtained by feeding its scaled cost
// through the distance inversion. Edges whose scaled cost does not exceed the
// edge offset constant have no finite inverse and are excluded from routing.
struct ScaledBaseGraph {
    const BaseGraph* base = nullptr;
    std::vector<double> scaled_cost;        // s(zeta) per edge, in [0,1]
    std::vector<double> effective_distance; // per-edge target distance, +inf if unreachable
    std::vector<double> working_cost;       // the zeta values the scaling was built from
    std::size_t unreachable_count = 0;

    std::size_t node_count() const { return base->node_count(); }
};

// Max-normalization scaling: s(zeta) = zeta / max zeta (all-zero costs scale
// to zero).
inline ScaledBaseGraph build_scaled_graph(const BaseGraph& g, std::span<const double> working_costs) {
    if (g.edges.empty()) throw ConfigError("cannot scale a graph with no edges");
    if (working_costs.size() != g.edges.size())
        throw ConfigError("working cost table size does not match edge count");

    double max_cost = 0.0;
    for (double z : working_costs) {
        if (z < 0.0) throw ConfigError("working costs must be >= 0");
        max_cost = std::max(max_cost, z);
    }

    ScaledBaseGraph s;
    s.base = &g;
    s.working_cost.assign(working_costs.begin(), working_costs.end());
    s.scaled_cost.resize(g.edges.size());
    s.effective_distance.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const double scaled = max_cost > 0.0 ? working_costs[e] / max_cost : 0.0;
        s.scaled_cost[e] = scaled;
        const auto& edge = g.edges[e];
        if (scaled > edge.offset) {
            s.effective_distance[e] =
                std::pow(1.0 / (edge.normalizer * (scaled - edge.offset)), 1.0 / g.dimension);
        } else {
            s.effective_distance[e] = std::numeric_limits<double>::infinity();
            ++s.unreachable_count;
        }
    }
    return s;
}

} // namespace entroute
