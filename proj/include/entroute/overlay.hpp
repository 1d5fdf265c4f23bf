#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "entroute/errors.hpp"

namespace entroute {

using NodeId = std::uint32_t;

// A shared entangled state between two quantum nodes. The level encodes the
// hop span (2^(level-1)); throughput is the number of maximally entangled
// states per second available at the tagged fidelity.
struct EntangledConnection {
    NodeId a = 0;
    NodeId b = 0;
    int level = 1;
    double probability = 1.0;
    double throughput = 0.0;
    double fidelity = 1.0;

    NodeId other(NodeId v) const { return v == a ? b : a; }
    bool touches(NodeId v) const { return a == v || b == v; }
};

struct DegreeThreshold {
    enum class Kind { quantile, absolute };
    Kind kind = Kind::quantile;
    double quantile = 0.9;
    int absolute = 0;
};

// Hop distance spanned by a level-l entangled connection: 2^(l-1).
inline std::int64_t hop_distance(int level) {
    if (level < 1)
        throw InvalidLevelError("entanglement level must be >= 1, got " + std::to_string(level));
    if (level > 62)
        throw InvalidLevelError("entanglement level out of range: " + std::to_string(level));
    return std::int64_t{1} << (level - 1);
}

class OverlayNetwork {
public:
    OverlayNetwork() = default;

    // Validates all structural invariants and resolves the degree threshold.
    // The threshold is resolved once here and kept fixed for the lifetime of
    // the network (post-failure views inherit it unchanged).
    OverlayNetwork(std::size_t node_count,
                   std::vector<EntangledConnection> connections,
                   std::map<int, double> level_thresholds = {},
                   DegreeThreshold degree_threshold = {})
        : node_count_(node_count),
          connections_(std::move(connections)),
          level_thresholds_(std::move(level_thresholds)),
          degree_threshold_(degree_threshold) {
        validate();
        resolved_degree_threshold_ = resolve_degree_threshold();
    }

    std::size_t node_count() const { return node_count_; }
    const std::vector<EntangledConnection>& connections() const { return connections_; }
    const std::map<int, double>& level_thresholds() const { return level_thresholds_; }
    const DegreeThreshold& degree_threshold() const { return degree_threshold_; }
    int resolved_degree_threshold() const { return resolved_degree_threshold_; }

    double level_threshold(int level) const {
        auto it = level_thresholds_.find(level);
        return it == level_thresholds_.end() ? kDefaultLevelThreshold : it->second;
    }

    int degree(NodeId node) const {
        require_node(node);
        int d = 0;
        for (const auto& c : connections_)
            if (c.touches(node)) ++d;
        return d;
    }

    bool is_high_degree(NodeId node) const {
        return degree(node) > resolved_degree_threshold_;
    }

    std::vector<NodeId> high_degree_nodes() const {
        std::vector<NodeId> hubs;
        for (NodeId v = 0; v < node_count_; ++v)
            if (is_high_degree(v)) hubs.push_back(v);
        return hubs;
    }

    // Rebuilds a network with the same thresholds but a pruned connection
    // list; the already-resolved degree threshold carries over.
    OverlayNetwork with_connections(std::vector<EntangledConnection> connections) const {
        OverlayNetwork out;
        out.node_count_ = node_count_;
        out.connections_ = std::move(connections);
        out.level_thresholds_ = level_thresholds_;
        out.degree_threshold_ = degree_threshold_;
        out.resolved_degree_threshold_ = resolved_degree_threshold_;
        out.validate();
        return out;
    }

    bool same_connections(const OverlayNetwork& other) const {
        if (node_count_ != other.node_count_) return false;
        auto key = [](const EntangledConnection& c) {
            return std::tuple(std::min(c.a, c.b), std::max(c.a, c.b), c.level, c.probability,
                              c.throughput, c.fidelity);
        };
        std::multiset<std::tuple<NodeId, NodeId, int, double, double, double>> lhs, rhs;
        for (const auto& c : connections_) lhs.insert(key(c));
        for (const auto& c : other.connections_) rhs.insert(key(c));
        return lhs == rhs;
    }

    static constexpr double kDefaultLevelThreshold = 0.5;

private:
    void require_node(NodeId node) const {
        if (node >= node_count_)
            throw NotFoundError("unknown node " + std::to_string(node));
    }

    void validate() const {
        std::set<std::tuple<NodeId, NodeId, int>> seen;
        for (std::size_t i = 0; i < connections_.size(); ++i) {
            const auto& c = connections_[i];
            const std::string at = "connections[" + std::to_string(i) + "]";
            if (c.a >= node_count_ || c.b >= node_count_)
                throw ConfigError(at + ": endpoint outside node set");
            if (c.a == c.b)
                throw ConfigError(at + ": self-loop not allowed");
            if (c.level < 1)
                throw ConfigError(at + ": level must be >= 1");
            if (!(c.probability > 0.0) || c.probability > 1.0)
                throw ConfigError(at + ": probability must be in (0,1]");
            if (c.probability < level_threshold(c.level))
                throw ConfigError(at + ": probability below the level-" +
                                  std::to_string(c.level) + " threshold");
            if (c.throughput < 0.0)
                throw ConfigError(at + ": throughput must be >= 0");
            if (!(c.fidelity > 0.0) || c.fidelity > 1.0)
                throw ConfigError(at + ": fidelity must be in (0,1]");
            auto k = std::tuple(std::min(c.a, c.b), std::max(c.a, c.b), c.level);
            if (!seen.insert(k).second)
                throw ConfigError(at + ": duplicate connection for this endpoint pair and level");
        }
    }

    // Threshold degree deg'(V): either an absolute value or the degree found
    // at the requested quantile of the degree distribution (lower nearest
    // rank on the sorted list).
    int resolve_degree_threshold() const {
        if (degree_threshold_.kind == DegreeThreshold::Kind::absolute)
            return degree_threshold_.absolute;
        if (node_count_ == 0) return 0;
        std::vector<int> degrees(node_count_, 0);
        for (const auto& c : connections_) {
            ++degrees[c.a];
            ++degrees[c.b];
        }
        std::sort(degrees.begin(), degrees.end());
        const double q = std::clamp(degree_threshold_.quantile, 0.0, 1.0);
        const auto idx = static_cast<std::size_t>(q * static_cast<double>(node_count_ - 1));
        return degrees[idx];
    }

    std::size_t node_count_ = 0;
    std::vector<EntangledConnection> connections_;
    std::map<int, double> level_thresholds_;
    DegreeThreshold degree_threshold_;
    int resolved_degree_threshold_ = 0;
};

inline int node_degree(const OverlayNetwork& net, NodeId node) { return net.degree(node); }
inline bool is_high_degree(const OverlayNetwork& net, NodeId node) { return net.is_high_degree(node); }

// One user's request: route required_throughput entangled states per second
// between source and target.
struct Demand {
    int user = 0;
    NodeId source = 0;
    NodeId target = 0;
    double required_throughput = 0.0;
    int demand_id = 0;
};

inline void validate_demand(const Demand& d, const OverlayNetwork& net) {
    if (d.source == d.target)
        throw ConfigError("demand " + std::to_string(d.demand_id) + ": source equals target");
    if (d.source >= net.node_count() || d.target >= net.node_count())
        throw ConfigError("demand " + std::to_string(d.demand_id) + ": endpoint outside node set");
    if (d.required_throughput < 0.0)
        throw ConfigError("demand " + std::to_string(d.demand_id) + ": negative throughput");
}

} // namespace entroute
