#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "entroute/base_graph.hpp"
#include "entroute/baselines.hpp"
#include "entroute/cost_model.hpp"
#include "entroute/disjoint.hpp"
#include "entroute/errors.hpp"
#include "entroute/failure.hpp"
#include "entroute/generate.hpp"
#include "entroute/json_io.hpp"
#include "entroute/overlay.hpp"
#include "entroute/rng.hpp"
#include "entroute/routing.hpp"

namespace entroute {

struct EmbeddingConfig {
    int dimension = 2;
    std::int64_t size = 0; // 0 = smallest square lattice that fits
    bool strict_levels = false;
    std::optional<std::vector<LatticePosition>> placement; // explicit map, else seeded-random
};

struct CampaignEntry {
    std::int64_t tick = 0;
    std::optional<NodeId> node; // empty = draw from the campaign stream
};

struct ScenarioConfig {
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string network_file;
    std::optional<GeneratorParams> generate;
    std::optional<LatticeFamilyParams> family; // lattice small-world source
    EmbeddingConfig embedding;
    std::vector<Demand> demands;
    int z = 1;
    int max_concurrences = 1;
    std::vector<CampaignEntry> campaign;
    BenchConfig bench;
    std::string out_dir = "out";
    bool forbid_affected = false;
    json raw = json::object(); // config echo for reports
};

namespace scenariodetail {

inline GeneratorParams generator_from_json(const json& doc, const std::string& at) {
    using jsondetail::integer_at;
    GeneratorParams params;
    params.node_count = static_cast<std::size_t>(integer_at(doc, "nodes", at));
    params.mean_degree = jsondetail::number_at(doc, "mean_degree", at);
    if (doc.contains("level_weights"))
        params.level_weights = doc["level_weights"].get<std::vector<double>>();
    if (doc.contains("probability_ranges")) {
        params.probability_ranges.clear();
        for (const auto& pair : doc["probability_ranges"])
            params.probability_ranges.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (doc.contains("level_thresholds"))
        for (auto it = doc["level_thresholds"].begin(); it != doc["level_thresholds"].end(); ++it)
            params.level_thresholds[std::stoi(it.key())] = it.value().get<double>();
    if (doc.contains("degree_threshold")) {
        const auto& d = doc["degree_threshold"];
        if (d.contains("quantile")) {
            params.degree_threshold.kind = DegreeThreshold::Kind::quantile;
            params.degree_threshold.quantile = d["quantile"].get<double>();
        } else if (d.contains("absolute")) {
            params.degree_threshold.kind = DegreeThreshold::Kind::absolute;
            params.degree_threshold.absolute = d["absolute"].get<int>();
        }
    }
    if (doc.contains("throughput_range")) {
        params.throughput_range = {doc["throughput_range"][0].get<double>(),
                                   doc["throughput_range"][1].get<double>()};
    }
    if (doc.contains("fidelity")) params.fidelity = doc["fidelity"].get<double>();
    return params;
}

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace scenariodetail

inline ScenarioConfig scenario_from_json(const json& doc, const std::string& origin) {
    ScenarioConfig config;
    config.raw = doc;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer())
            throw ConfigError(origin + ".seed: must be an integer");
        config.seed = doc["seed"].get<std::uint64_t>();
        config.seed_set = true;
    }
    if (doc.contains("network")) {
        const auto& net = doc["network"];
        if (net.contains("file")) config.network_file = net["file"].get<std::string>();
        if (net.contains("generate"))
            config.generate = scenariodetail::generator_from_json(net["generate"],
                                                                  origin + ".network.generate");
        if (net.contains("family")) {
            const auto& fam = net["family"];
            LatticeFamilyParams params;
            if (fam.contains("k")) params.dimension = fam["k"].get<int>();
            if (fam.contains("side")) params.side = fam["side"].get<std::int32_t>();
            if (fam.contains("long_range_contacts"))
                params.long_range_contacts = fam["long_range_contacts"].get<int>();
            if (fam.contains("grid_probability"))
                params.grid_probability = fam["grid_probability"].get<double>();
            if (fam.contains("long_range_probability"))
                params.long_range_probability = fam["long_range_probability"].get<double>();
            config.family = params;
        }
        if (config.network_file.empty() && !config.generate && !config.family)
            throw ConfigError(origin + ".network: needs \"file\", \"generate\", or \"family\"");
    } else {
        throw ConfigError(origin + ".network: missing");
    }
    if (doc.contains("embedding")) {
        const auto& emb = doc["embedding"];
        if (emb.contains("k")) config.embedding.dimension = emb["k"].get<int>();
        if (emb.contains("n")) config.embedding.size = emb["n"].get<std::int64_t>();
        if (emb.contains("strict_levels"))
            config.embedding.strict_levels = emb["strict_levels"].get<bool>();
        if (emb.contains("placement") && emb["placement"].is_object()) {
            std::vector<LatticePosition> placement;
            const auto& p = emb["placement"];
            placement.resize(p.size());
            for (auto it = p.begin(); it != p.end(); ++it) {
                const auto id = static_cast<std::size_t>(std::stoul(it.key()));
                if (id >= placement.size())
                    throw ConfigError(origin + ".embedding.placement: node ids must be dense");
                placement[id].coords = it.value().get<std::vector<std::int32_t>>();
            }
            config.embedding.placement = std::move(placement);
        }
    }
    if (doc.contains("demands")) {
        for (std::size_t i = 0; i < doc["demands"].size(); ++i) {
            const auto& d = doc["demands"][i];
            const std::string at = origin + ".demands[" + std::to_string(i) + "]";
            Demand demand;
            demand.user = static_cast<int>(jsondetail::integer_at(d, "user", at));
            demand.source = static_cast<NodeId>(jsondetail::integer_at(d, "source", at));
            demand.target = static_cast<NodeId>(jsondetail::integer_at(d, "target", at));
            demand.required_throughput = jsondetail::number_at(d, "q_f", at);
            demand.demand_id = d.contains("id") ? d["id"].get<int>() : static_cast<int>(i);
            config.demands.push_back(demand);
        }
    }
    if (doc.contains("z")) config.z = doc["z"].get<int>();
    if (doc.contains("max_concurrences")) config.max_concurrences = doc["max_concurrences"].get<int>();
    if (config.z < 1) throw ConfigError(origin + ".z: must be >= 1");
    if (config.max_concurrences < 1) throw ConfigError(origin + ".max_concurrences: must be >= 1");
    if (doc.contains("campaign")) {
        for (const auto& entry : doc["campaign"]) {
            CampaignEntry e;
            e.tick = entry.contains("tick") ? entry["tick"].get<std::int64_t>() : 0;
            if (entry.contains("fail") && entry["fail"].is_number_integer())
                e.node = entry["fail"].get<NodeId>();
            config.campaign.push_back(e);
        }
    }
    if (doc.contains("bench")) {
        const auto& b = doc["bench"];
        if (b.contains("n")) config.bench.n_values = b["n"].get<std::vector<std::int64_t>>();
        if (b.contains("budgets")) config.bench.budgets = b["budgets"].get<std::vector<int>>();
        if (b.contains("z_paths")) config.bench.z_paths = b["z_paths"].get<int>();
        if (b.contains("long_range_contacts"))
            config.bench.long_range_contacts = b["long_range_contacts"].get<int>();
    }
    if (doc.contains("out_dir")) config.out_dir = doc["out_dir"].get<std::string>();
    if (doc.contains("forbid_affected")) config.forbid_affected = doc["forbid_affected"].get<bool>();
    return config;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    const std::string text = read_file(path);
    ScenarioConfig config = scenario_from_json(jsondetail::parse_text(text, path), path);
    if (!config.network_file.empty()) {
        namespace fs = std::filesystem;
        fs::path net_path = config.network_file;
        if (net_path.is_relative()) net_path = fs::path(path).parent_path() / net_path;
        if (!fs::exists(net_path))
            throw ConfigError(path + ".network.file: " + net_path.string() + " does not exist");
        config.network_file = net_path.string();
    }
    return config;
}

// Everything the commands need after network setup.
struct ScenarioRuntime {
    OverlayNetwork net;
    BaseGraph graph;
    CostModel cost_model;
    std::vector<NodeId> hubs;
};

inline ScenarioRuntime prepare_runtime(const ScenarioConfig& config) {
    if (!config.seed_set) throw ConfigError("a seed is required (config \"seed\" or --seed)");
    ScenarioRuntime rt;

    if (config.family) {
        // lattice family: nodes are lattice cells, placed at their own cells
        rt.net = lattice_small_world(*config.family, config.seed);
        const int k = config.family->dimension;
        std::int64_t n = 1;
        for (int i = 0; i < k; ++i) n *= config.family->side;
        auto coords = lattice_identity_coords(k, config.family->side);
        std::vector<LatticePosition> placement(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) placement[i].coords = coords[i];
        EmbedOptions options;
        options.strict_levels = config.embedding.strict_levels;
        rt.graph = embed_overlay(rt.net, k, n, std::move(placement), options);
        rt.cost_model = compute_cost_model(rt.graph);
        rt.hubs = rt.net.high_degree_nodes();
        return rt;
    }

    rt.net = config.generate ? generate_network(*config.generate, config.seed)
                             : load_network(config.network_file);
    const int k = config.embedding.dimension;
    std::int64_t n = config.embedding.size;
    if (n == 0) {
        std::int32_t side = 1;
        auto fits = [&](std::int32_t s) {
            std::int64_t cap = 1;
            for (int i = 0; i < k; ++i) cap *= s;
            return cap >= static_cast<std::int64_t>(rt.net.node_count());
        };
        while (!fits(side)) ++side;
        n = 1;
        for (int i = 0; i < k; ++i) n *= side;
    }
    EmbedOptions options;
    options.strict_levels = config.embedding.strict_levels;
    if (config.embedding.placement) {
        rt.graph = embed_overlay(rt.net, k, n, *config.embedding.placement, options);
    } else {
        RandomStream placement_rng(config.seed, "placement");
        rt.graph = embed_overlay(rt.net, k, n, placement_rng, options);
    }
    rt.cost_model = compute_cost_model(rt.graph);
    rt.hubs = rt.net.high_degree_nodes();
    return rt;
}

namespace scenariodetail {

inline void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir);
}

inline std::string join_nodes(const std::vector<NodeId>& nodes) {
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(nodes[i]);
    }
    return out;
}

inline std::string costs_csv(const BaseGraph& g, const CostModel& cm) {
    std::string csv = "type,node,a,b,level,chi,beta,gamma,tau\n";
    for (std::size_t v = 0; v < g.node_count(); ++v)
        csv += "node," + std::to_string(v) + ",,,," + fmt(cm.transit_share[v]) + "," +
               fmt(cm.node_weight[v]) + ",,\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        csv += "edge,," + std::to_string(g.edges[e].a) + "," + std::to_string(g.edges[e].b) + "," +
               std::to_string(g.edges[e].level) + ",,," + fmt(cm.main_cost[e]) + "," +
               fmt(cm.repl_cost[e]) + "\n";
    return csv;
}

} // namespace scenariodetail

// generate: write a network file. Deterministic for a fixed seed.
inline void cmd_generate(const GeneratorParams& params, std::uint64_t seed,
                         const std::string& out_file) {
    save_network(generate_network(params, seed), out_file);
}

// inspect: embed and export the placement plus per-edge decomposition.
inline json cmd_inspect(const ScenarioConfig& config) {
    const ScenarioRuntime rt = prepare_runtime(config);
    json doc = embedding_to_json(rt.graph);
    scenariodetail::ensure_out_dir(config.out_dir);
    write_file((std::filesystem::path(config.out_dir) / "embedding.json").string(),
               doc.dump(2) + "\n");
    return doc;
}

// costs: per-node and per-edge coefficient tables.
inline void cmd_costs(const ScenarioConfig& config) {
    const ScenarioRuntime rt = prepare_runtime(config);
    scenariodetail::ensure_out_dir(config.out_dir);
    write_file((std::filesystem::path(config.out_dir) / "costs.csv").string(),
               scenariodetail::costs_csv(rt.graph, rt.cost_model));
}

// route: solve every demand, run the validators, write report + tables.
inline json cmd_route(const ScenarioConfig& config) {
    const ScenarioRuntime rt = prepare_runtime(config);

    json report;
    report["seed"] = config.seed;
    report["config"] = config.raw;
    report["level_warnings"] = rt.graph.level_warnings;

    std::string routes_csv = "demand_id,path_index,kind,nodes,omega,steps\n";
    std::vector<Solution> solutions;
    json demand_rows = json::array();

    for (const auto& demand : config.demands) {
        validate_demand(demand, rt.net);
        json row;
        row["id"] = demand.demand_id;
        row["user"] = demand.user;
        row["source"] = demand.source;
        row["target"] = demand.target;

        SolveOptions options;
        options.z = config.z;
        options.max_concurrences = config.max_concurrences;
        options.context = SolveContext::demand_main;
        options.hub_nodes = rt.hubs;

        try {
            const DisjointPathSet set = find_disjoint_paths(rt.graph, rt.cost_model, demand, options);
            row["status"] = set.complete ? "complete" : "incomplete";
            if (!set.complete) row["reason"] = set.status;
            row["kappa"] = set.concurrences;
            row["psi_total"] = set.total_cost;
            row["psi_replacements"] = set.replacement_total;
            json paths = json::array();
            for (std::size_t p = 0; p < set.paths.size(); ++p) {
                paths.push_back(set.paths[p].nodes);
                routes_csv += std::to_string(demand.demand_id) + "," + std::to_string(p + 1) + "," +
                              (p == 0 ? "main" : "replacement") + "," +
                              scenariodetail::join_nodes(set.paths[p].nodes) + "," +
                              scenariodetail::fmt(set.path_costs[p]) + "," +
                              std::to_string(set.paths[p].steps()) + "\n";
            }
            row["paths"] = std::move(paths);
            row["path_costs"] = set.path_costs;

            const Solution sol = solution_from_paths(set, demand.user);
            const DisjointReport disjoint = validate_disjointness(set);
            const FlowReport flow = validate_flow_conservation(sol, demand, rt.graph);
            row["validators"] = {{"disjoint", disjoint.ok}, {"flow", flow.ok}};
            solutions.push_back(sol);
        } catch (const NoMainPathError& e) {
            row["status"] = "no_main_path";
            row["reason"] = e.what();
        }
        demand_rows.push_back(std::move(row));
    }
    report["demands"] = std::move(demand_rows);

    const ThroughputReport throughput = validate_throughput(solutions, config.demands, rt.net);
    json tp;
    tp["ok"] = throughput.ok;
    json violations = json::array();
    for (const auto& v : throughput.violations)
        violations.push_back({{"edge", v.edge}, {"load", v.load}, {"capacity", v.capacity}});
    tp["violations"] = std::move(violations);
    report["throughput"] = std::move(tp);

    scenariodetail::ensure_out_dir(config.out_dir);
    const std::filesystem::path dir = config.out_dir;
    write_file((dir / "report.json").string(), report.dump(2) + "\n");
    write_file((dir / "routes.csv").string(), routes_csv);
    write_file((dir / "costs.csv").string(), scenariodetail::costs_csv(rt.graph, rt.cost_model));
    return report;
}

// fail: run the failure campaign against each demand's main path.
inline json cmd_fail(const ScenarioConfig& config) {
    const ScenarioRuntime rt = prepare_runtime(config);
    RandomStream campaign_rng(config.seed, "campaign");

    json report;
    report["seed"] = config.seed;
    report["config"] = config.raw;
    std::string campaign_csv =
        "tick,demand_id,failed_node,destroyed,replacement_psi,success,steps\n";
    json events = json::array();

    for (const auto& entry : config.campaign) {
        const NodeId failed =
            entry.node ? *entry.node
                       : static_cast<NodeId>(campaign_rng.uniform_int(
                             0, static_cast<std::int64_t>(rt.net.node_count()) - 1));

        auto [event, view] = inject_failure(rt.net, failed, entry.tick);
        const BaseGraph post_graph = embed_overlay(view, rt.graph.dimension, rt.graph.capacity,
                                                   rt.graph.placement);
        const CostModel post_cm = compute_cost_model(post_graph);

        for (const auto& demand : config.demands) {
            validate_demand(demand, rt.net);
            json row;
            row["tick"] = entry.tick;
            row["demand_id"] = demand.demand_id;
            row["failed_node"] = failed;
            row["destroyed"] = event.destroyed_count();

            SolveOptions main_options;
            main_options.z = 1;
            main_options.max_concurrences = config.max_concurrences;
            main_options.context = SolveContext::demand_main;
            main_options.hub_nodes = rt.hubs;

            bool success = false;
            double psi = 0.0;
            std::int64_t steps = 0;
            try {
                const DisjointPathSet main_set =
                    find_disjoint_paths(rt.graph, rt.cost_model, demand, main_options);
                SwitchoverOptions so;
                so.z = config.z;
                so.max_concurrences = config.max_concurrences;
                so.forbid_affected = config.forbid_affected;
                SwitchoverPlan plan = plan_switchover(main_set.paths.front(), event, rt.net, view,
                                                      post_graph, post_cm, so);
                row["status"] = plan.status == PlanStatus::active
                                    ? "active"
                                    : (plan.status == PlanStatus::restored ? "restored" : "failed");
                if (!plan.diagnostics.empty()) row["diagnostics"] = plan.diagnostics;
                if (plan.status == PlanStatus::active) {
                    row["replacement_source"] = plan.replacement_source;
                    row["replacement_target"] = plan.replacement_target;
                    psi = plan.replacements.total_cost;
                    steps = plan.replacements.ops.greedy_steps;
                    success = true;
                } else if (plan.status == PlanStatus::restored) {
                    success = true;
                }
                plan = restore(std::move(plan));
                row["restored_conserves_network"] = plan.working_view.same_connections(rt.net);
            } catch (const NoMainPathError& e) {
                row["status"] = "no_main_path";
                row["diagnostics"] = e.what();
            }
            row["replacement_psi"] = psi;
            row["success"] = success;
            row["steps"] = steps;
            campaign_csv += std::to_string(entry.tick) + "," + std::to_string(demand.demand_id) +
                            "," + std::to_string(failed) + "," +
                            std::to_string(event.destroyed_count()) + "," +
                            scenariodetail::fmt(psi) + "," + (success ? "1" : "0") + "," +
                            std::to_string(steps) + "\n";
            events.push_back(std::move(row));
        }
    }
    report["events"] = std::move(events);

    scenariodetail::ensure_out_dir(config.out_dir);
    const std::filesystem::path dir = config.out_dir;
    write_file((dir / "report.json").string(), report.dump(2) + "\n");
    write_file((dir / "campaign.csv").string(), campaign_csv);
    return report;
}

// bench: operation-count comparison table plus plottable series.
inline json cmd_bench(const ScenarioConfig& config) {
    if (!config.seed_set) throw ConfigError("a seed is required (config \"seed\" or --seed)");
    const std::vector<BenchRow> rows = bench_campaign(config.bench, config.seed);

    std::string csv = "scheme,n,budget_or_z,n_o_envelope,n_o_measured,success,psi_total,wall_time_ms\n";
    for (const auto& r : rows)
        csv += r.scheme + "," + std::to_string(r.n) + "," + std::to_string(r.budget_or_z) + "," +
               scenariodetail::fmt(r.n_o_envelope) + "," + scenariodetail::fmt(r.n_o_measured) +
               "," + (r.success ? "1" : "0") + "," + scenariodetail::fmt(r.psi_total) + "," +
               scenariodetail::fmt(r.wall_time_ms) + "\n";

    json plot;
    json series = json::array();
    for (const char* scheme : {"proposed", "kpa", "kpi", "ksp"}) {
        for (int budget : config.bench.budgets) {
            json s;
            s["scheme"] = scheme;
            s["budget_or_z"] = budget;
            json xs = json::array(), env = json::array(), measured = json::array();
            for (const auto& r : rows) {
                if (r.scheme != scheme || r.budget_or_z != budget) continue;
                xs.push_back(r.n);
                env.push_back(r.n_o_envelope);
                measured.push_back(r.n_o_measured);
            }
            s["x"] = std::move(xs);
            s["y_envelope"] = std::move(env);
            s["y_measured"] = std::move(measured);
            series.push_back(std::move(s));
        }
    }
    plot["series"] = std::move(series);

    scenariodetail::ensure_out_dir(config.out_dir);
    const std::filesystem::path dir = config.out_dir;
    write_file((dir / "bench.csv").string(), csv);
    write_file((dir / "plotdata.json").string(), plot.dump(2) + "\n");

    json result;
    result["rows"] = json::array();
    for (const auto& r : rows)
        result["rows"].push_back({{"scheme", r.scheme},
                                  {"n", r.n},
                                  {"budget_or_z", r.budget_or_z},
                                  {"n_o_envelope", r.n_o_envelope},
                                  {"n_o_measured", r.n_o_measured},
                                  {"success", r.success},
                                  {"psi_total", r.psi_total}});
    return result;
}

} // namespace entroute
