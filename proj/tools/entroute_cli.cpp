// entroute command-line front end.
//
// Subcommands: generate, inspect, costs, route, fail, bench. Every command is
// driven by a JSON config plus a mandatory seed; outputs are deterministic for
// a fixed seed (wall-time columns excepted).
//
// Exit codes: 0 success (including recorded solver failures), 2 config error,
// 3 I/O error.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "entroute/entroute.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool strict_levels = false;
    bool forbid_affected = false;
};

entroute::ScenarioConfig load_config(const GlobalArgs& args) {
    if (args.config_path.empty()) throw entroute::ConfigError("--config is required");
    entroute::ScenarioConfig config = entroute::load_scenario(args.config_path);
    if (args.seed) {
        config.seed = *args.seed;
        config.seed_set = true;
    }
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    if (args.strict_levels) config.embedding.strict_levels = true;
    if (args.forbid_affected) config.forbid_affected = true;
    if (!config.seed_set) throw entroute::ConfigError("a seed is required (config \"seed\" or --seed)");
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangled-network routing simulator with memory-failure switchover"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "scenario config JSON");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");
    app.add_option("--out-dir", args.out_dir, "override the output directory");
    app.add_flag("--strict-levels", args.strict_levels,
                 "reject level/distance inconsistencies when embedding");
    app.add_flag("--forbid-affected", args.forbid_affected,
                 "exclude nodes that lost a contact from replacement transit");

    auto* generate = app.add_subcommand("generate", "write a random network file");
    std::string generate_out = "network.json";
    generate->add_option("--out", generate_out, "output network file");

    auto* inspect = app.add_subcommand("inspect", "export the embedding");
    auto* costs = app.add_subcommand("costs", "export the cost coefficient tables");
    auto* route = app.add_subcommand("route", "solve the configured demands");
    auto* fail = app.add_subcommand("fail", "run the failure campaign");
    auto* bench = app.add_subcommand("bench", "run the scheme comparison grid");
    for (auto* sub : {generate, inspect, costs, route, fail, bench}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) args.seed = seed_value;

    try {
        const entroute::ScenarioConfig config = load_config(args);
        if (generate->parsed()) {
            if (!config.generate)
                throw entroute::ConfigError("generate: config needs network.generate parameters");
            entroute::cmd_generate(*config.generate, config.seed, generate_out);
            std::printf("wrote %s\n", generate_out.c_str());
        } else if (inspect->parsed()) {
            entroute::cmd_inspect(config);
            std::printf("wrote %s/embedding.json\n", config.out_dir.c_str());
        } else if (costs->parsed()) {
            entroute::cmd_costs(config);
            std::printf("wrote %s/costs.csv\n", config.out_dir.c_str());
        } else if (route->parsed()) {
            entroute::cmd_route(config);
            std::printf("wrote %s/report.json, routes.csv, costs.csv\n", config.out_dir.c_str());
        } else if (fail->parsed()) {
            entroute::cmd_fail(config);
            std::printf("wrote %s/report.json, campaign.csv\n", config.out_dir.c_str());
        } else if (bench->parsed()) {
            entroute::cmd_bench(config);
            std::printf("wrote %s/bench.csv, plotdata.json\n", config.out_dir.c_str());
        }
    } catch (const entroute::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const entroute::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const entroute::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
