#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entroute/base_graph.hpp"
#include "entroute/errors.hpp"
#include "entroute/overlay.hpp"
#include "entroute/routing.hpp"

namespace entroute {

using json = nlohmann::json;

namespace jsondetail {

inline std::string line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return std::to_string(line);
}

inline json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": line " + line_of_offset(text, e.byte) + ": " + e.what());
    }
}

inline const json& member(const json& obj, const std::string& key, const std::string& at) {
    if (!obj.is_object()) throw ConfigError(at + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(at + "." + key + ": missing");
    return *it;
}

inline double number_at(const json& obj, const std::string& key, const std::string& at) {
    const json& v = member(obj, key, at);
    if (!v.is_number()) throw ConfigError(at + "." + key + ": must be a number");
    return v.get<double>();
}

inline std::int64_t integer_at(const json& obj, const std::string& key, const std::string& at) {
    const json& v = member(obj, key, at);
    if (!v.is_number_integer()) throw ConfigError(at + "." + key + ": must be an integer");
    return v.get<std::int64_t>();
}

} // namespace jsondetail

// Network file schema:
//   {"nodes": [0,1,...],
//    "connections": [{"a":..,"b":..,"level":..,"prob":..,"q_f":..,"fidelity":..}, ...],
//    "level_thresholds": {"1": 0.5, ...},
//    "degree_threshold": {"quantile": 0.9} | {"absolute": 3}}
inline OverlayNetwork network_from_json(const json& doc, const std::string& origin) {
    using jsondetail::integer_at;
    using jsondetail::member;
    using jsondetail::number_at;

    const json& nodes = member(doc, "nodes", origin);
    if (!nodes.is_array()) throw ConfigError(origin + ".nodes: must be an array");
    std::vector<char> seen(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string at = origin + ".nodes[" + std::to_string(i) + "]";
        if (!nodes[i].is_number_integer()) throw ConfigError(at + ": must be an integer");
        const auto id = nodes[i].get<std::int64_t>();
        if (id < 0 || id >= static_cast<std::int64_t>(nodes.size()))
            throw ConfigError(at + ": node ids must be dense 0..=" +
                              std::to_string(nodes.size() - 1));
        if (seen[static_cast<std::size_t>(id)]) throw ConfigError(at + ": duplicate node id");
        seen[static_cast<std::size_t>(id)] = 1;
    }

    std::vector<EntangledConnection> conns;
    if (doc.contains("connections")) {
        const json& list = doc["connections"];
        if (!list.is_array()) throw ConfigError(origin + ".connections: must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string at = origin + ".connections[" + std::to_string(i) + "]";
            EntangledConnection c;
            c.a = static_cast<NodeId>(integer_at(list[i], "a", at));
            c.b = static_cast<NodeId>(integer_at(list[i], "b", at));
            c.level = static_cast<int>(integer_at(list[i], "level", at));
            c.probability = number_at(list[i], "prob", at);
            c.throughput = number_at(list[i], "q_f", at);
            c.fidelity = number_at(list[i], "fidelity", at);
            conns.push_back(c);
        }
    }

    std::map<int, double> thresholds;
    if (doc.contains("level_thresholds")) {
        const json& t = doc["level_thresholds"];
        if (!t.is_object()) throw ConfigError(origin + ".level_thresholds: must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            int level = 0;
            try {
                level = std::stoi(it.key());
            } catch (...) {
                throw ConfigError(origin + ".level_thresholds." + it.key() + ": bad level key");
            }
            if (!it.value().is_number())
                throw ConfigError(origin + ".level_thresholds." + it.key() + ": must be a number");
            thresholds[level] = it.value().get<double>();
        }
    }

    DegreeThreshold degree;
    if (doc.contains("degree_threshold")) {
        const json& d = doc["degree_threshold"];
        if (d.contains("quantile")) {
            degree.kind = DegreeThreshold::Kind::quantile;
            degree.quantile = jsondetail::number_at(d, "quantile", origin + ".degree_threshold");
        } else if (d.contains("absolute")) {
            degree.kind = DegreeThreshold::Kind::absolute;
            degree.absolute = static_cast<int>(
                jsondetail::integer_at(d, "absolute", origin + ".degree_threshold"));
        } else {
            throw ConfigError(origin + ".degree_threshold: needs \"quantile\" or \"absolute\"");
        }
    }

    try {
        return OverlayNetwork(nodes.size(), std::move(conns), std::move(thresholds), degree);
    } catch (const ConfigError& e) {
        throw ConfigError(origin + "." + e.what());
    }
}

inline json network_to_json(const OverlayNetwork& net) {
    json doc;
    json nodes = json::array();
    for (std::size_t i = 0; i < net.node_count(); ++i) nodes.push_back(i);
    doc["nodes"] = std::move(nodes);
    json conns = json::array();
    for (const auto& c : net.connections()) {
        conns.push_back({{"a", c.a},
                         {"b", c.b},
                         {"level", c.level},
                         {"prob", c.probability},
                         {"q_f", c.throughput},
                         {"fidelity", c.fidelity}});
    }
    doc["connections"] = std::move(conns);
    json thresholds = json::object();
    for (const auto& [level, value] : net.level_thresholds())
        thresholds[std::to_string(level)] = value;
    doc["level_thresholds"] = std::move(thresholds);
    if (net.degree_threshold().kind == DegreeThreshold::Kind::quantile)
        doc["degree_threshold"] = {{"quantile", net.degree_threshold().quantile}};
    else
        doc["degree_threshold"] = {{"absolute", net.degree_threshold().absolute}};
    return doc;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

inline OverlayNetwork load_network(const std::string& path) {
    const std::string text = read_file(path);
    return network_from_json(jsondetail::parse_text(text, path), path);
}

inline void save_network(const OverlayNetwork& net, const std::string& path) {
    write_file(path, network_to_json(net).dump(2) + "\n");
}

// Embedding export: placements plus the per-edge decomposition tuple.
inline json embedding_to_json(const BaseGraph& g) {
    json doc;
    doc["dimension"] = g.dimension;
    doc["size"] = g.capacity;
    json placements = json::object();
    for (std::size_t v = 0; v < g.placement.size(); ++v)
        placements[std::to_string(v)] = g.placement[v].coords;
    doc["placements"] = std::move(placements);
    json edges = json::array();
    for (const auto& e : g.edges) {
        edges.push_back({{"a", e.a},
                         {"b", e.b},
                         {"level", e.level},
                         {"d", e.lattice_distance},
                         {"h_n", e.normalizer},
                         {"c", e.offset},
                         {"p", e.power_term + e.offset}});
    }
    doc["edges"] = std::move(edges);
    doc["level_warnings"] = g.level_warnings;
    return doc;
}

inline json route_to_json(const Route& r) {
    json doc;
    doc["nodes"] = r.nodes;
    doc["steps"] = r.steps();
    doc["cost"] = r.total_cost;
    return doc;
}

} // namespace entroute
