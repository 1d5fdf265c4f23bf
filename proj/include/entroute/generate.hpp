#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "entroute/errors.hpp"
#include "entroute/overlay.hpp"
#include "entroute/rng.hpp"

namespace entroute {

struct GeneratorParams {
    std::size_t node_count = 0;
    double mean_degree = 0.0;
    // weight of each entanglement level, starting at level 1
    std::vector<double> level_weights = {0.7, 0.2, 0.1};
    // per-level probability range; the lower bound is clamped up to the
    // level threshold so generated connections always satisfy it
    std::vector<std::pair<double, double>> probability_ranges;
    std::map<int, double> level_thresholds;
    DegreeThreshold degree_threshold;
    std::pair<double, double> throughput_range = {1.0, 10.0};
    double fidelity = 0.98;
};

namespace detail {

inline int pick_level(const std::vector<double>& weights, RandomStream& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return 1;
    double roll = rng.uniform_real(0.0, total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (roll < weights[i]) return static_cast<int>(i) + 1;
        roll -= weights[i];
    }
    return static_cast<int>(weights.size());
}

} // namespace detail

// Deterministic random network: a pure function of (params, seed). The edge
// count is fixed exactly at round(node_count * mean_degree / 2).
inline OverlayNetwork generate_network(const GeneratorParams& params, std::uint64_t seed) {
    const std::size_t n = params.node_count;
    std::map<int, double> thresholds = params.level_thresholds;

    if (n == 0) throw ConfigError("generator: node_count must be >= 1");
    if (params.mean_degree < 0.0) throw ConfigError("generator: mean_degree must be >= 0");

    auto make = [&](std::vector<EntangledConnection> conns) {
        return OverlayNetwork(n, std::move(conns), thresholds, params.degree_threshold);
    };

    if (n == 1) return make({});
    if (params.mean_degree > static_cast<double>(n - 1))
        throw ConfigError("generator: mean_degree " + std::to_string(params.mean_degree) +
                          " exceeds node_count-1");

    const auto edge_count =
        static_cast<std::size_t>(std::llround(static_cast<double>(n) * params.mean_degree / 2.0));
    const std::size_t levels = std::max<std::size_t>(params.level_weights.size(), 1);
    const std::size_t capacity = levels * (n * (n - 1) / 2);
    if (edge_count > capacity)
        throw ConfigError("generator: requested " + std::to_string(edge_count) +
                          " connections but only " + std::to_string(capacity) + " are possible");

    auto threshold_of = [&](int level) {
        auto it = thresholds.find(level);
        return it == thresholds.end() ? OverlayNetwork::kDefaultLevelThreshold : it->second;
    };
    auto range_of = [&](int level) {
        const double thr = threshold_of(level);
        std::pair<double, double> range{thr, 1.0};
        const auto idx = static_cast<std::size_t>(level - 1);
        if (idx < params.probability_ranges.size()) range = params.probability_ranges[idx];
        range.first = std::max(range.first, thr);
        range.second = std::max(range.second, range.first);
        if (range.second > 1.0) throw ConfigError("generator: probability range exceeds 1");
        return range;
    };

    RandomStream rng(seed, "generate");
    std::set<std::tuple<NodeId, NodeId, int>> used;
    std::vector<EntangledConnection> conns;
    conns.reserve(edge_count);

    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 * (edge_count + 1);
    while (conns.size() < edge_count) {
        if (++attempts > max_attempts)
            throw ConfigError("generator: could not place all connections (graph too dense)");
        const auto a = static_cast<NodeId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        const auto b = static_cast<NodeId>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        if (a == b) continue;
        const int level = detail::pick_level(params.level_weights, rng);
        auto key = std::tuple(std::min(a, b), std::max(a, b), level);
        if (!used.insert(key).second) continue;
        const auto [lo, hi] = range_of(level);
        EntangledConnection c;
        c.a = std::min(a, b);
        c.b = std::max(a, b);
        c.level = level;
        c.probability = rng.uniform_real(lo, hi);
        if (c.probability >= 1.0) c.probability = hi;
        c.throughput = rng.uniform_real(params.throughput_range.first, params.throughput_range.second);
        c.fidelity = params.fidelity;
        conns.push_back(c);
    }
    return make(std::move(conns));
}

// Small-world lattice family: every cell of a k-dimensional side^k lattice
// holds a node with its 2k grid neighbors, plus extra long-range contacts per
// node sampled with probability proportional to d^(-k). This is the
// connectivity under which decentralized greedy routing reaches targets in
// polylogarithmic steps. Default connection probabilities are low so that
// scaled-cost routing keeps most edges invertible (an edge whose scaled cost
// falls below its offset constant has no finite distance in the scaled graph,
// and the offset tracks the connection probability).
struct LatticeFamilyParams {
    int dimension = 2;
    std::int32_t side = 16;
    int long_range_contacts = 1;
    double grid_probability = 0.1;
    double long_range_probability = 0.08;
};

inline OverlayNetwork lattice_small_world(const LatticeFamilyParams& params, std::uint64_t seed) {
    const int k = params.dimension;
    if (k < 1 || k > 3) throw ConfigError("lattice family: dimension must be 1..3");
    if (params.side < 2) throw ConfigError("lattice family: side must be >= 2");

    std::size_t n = 1;
    for (int i = 0; i < k; ++i) n *= static_cast<std::size_t>(params.side);

    auto coords_of = [&](std::size_t idx) {
        std::vector<std::int32_t> c(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(idx % params.side);
            idx /= static_cast<std::size_t>(params.side);
        }
        return c;
    };
    auto l1 = [&](std::size_t u, std::size_t v) {
        auto cu = coords_of(u), cv = coords_of(v);
        std::int64_t d = 0;
        for (int i = 0; i < k; ++i)
            d += std::abs(static_cast<std::int64_t>(cu[static_cast<std::size_t>(i)]) -
                          cv[static_cast<std::size_t>(i)]);
        return d;
    };
    auto level_for = [](std::int64_t d) {
        int level = 1;
        while ((std::int64_t{1} << (level - 1)) < d) ++level;
        return level;
    };

    RandomStream rng(seed, "lattice-family");
    std::set<std::tuple<NodeId, NodeId, int>> used;
    std::vector<EntangledConnection> conns;

    auto add = [&](std::size_t u, std::size_t v, int level, double prob) {
        auto key = std::tuple(static_cast<NodeId>(std::min(u, v)),
                              static_cast<NodeId>(std::max(u, v)), level);
        if (!used.insert(key).second) return false;
        EntangledConnection c;
        c.a = static_cast<NodeId>(std::min(u, v));
        c.b = static_cast<NodeId>(std::max(u, v));
        c.level = level;
        c.probability = prob;
        c.throughput = 1.0;
        c.fidelity = 0.99;
        conns.push_back(c);
        return true;
    };

    // grid edges
    for (std::size_t u = 0; u < n; ++u) {
        auto cu = coords_of(u);
        for (int axis = 0; axis < k; ++axis) {
            if (cu[static_cast<std::size_t>(axis)] + 1 < params.side) {
                std::size_t stride = 1;
                for (int i = axis + 1; i < k; ++i) stride *= static_cast<std::size_t>(params.side);
                add(u, u + stride, 1, params.grid_probability);
            }
        }
    }

    // long-range contacts, inverse k-power law over lattice distance
    std::vector<double> weights(n);
    for (std::size_t u = 0; u < n; ++u) {
        double total = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) {
                weights[v] = 0.0;
                continue;
            }
            weights[v] = std::pow(static_cast<double>(l1(u, v)), -static_cast<double>(k));
            total += weights[v];
        }
        for (int c = 0; c < params.long_range_contacts; ++c) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                double roll = rng.uniform_real(0.0, total);
                std::size_t v = 0;
                for (; v + 1 < n; ++v) {
                    if (roll < weights[v]) break;
                    roll -= weights[v];
                }
                const auto d = l1(u, v);
                if (d <= 1) continue;
                if (add(u, v, level_for(d), params.long_range_probability)) break;
            }
        }
    }

    std::map<int, double> thresholds;
    for (int level = 1; level <= level_for(static_cast<std::int64_t>(k) * (params.side - 1)); ++level)
        thresholds[level] = 0.05;
    return OverlayNetwork(n, std::move(conns), thresholds, DegreeThreshold{});
}

// Row-major placement of the lattice family onto its own lattice.
inline std::vector<std::vector<std::int32_t>> lattice_identity_coords(int dimension, std::int32_t side) {
    std::size_t n = 1;
    for (int i = 0; i < dimension; ++i) n *= static_cast<std::size_t>(side);
    std::vector<std::vector<std::int32_t>> out(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::vector<std::int32_t> c(static_cast<std::size_t>(dimension));
        std::size_t rem = idx;
        for (int i = dimension - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rem % side);
            rem /= static_cast<std::size_t>(side);
        }
        out[idx] = std::move(c);
    }
    return out;
}

} // namespace entroute
