#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarsim/experiment.hpp"

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw polarsim::ConfigError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw polarsim::ConfigError(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Belief-dynamics simulator: evolves agent beliefs on weighted influence "
                 "graphs and tracks polarization"};
    app.require_subcommand(1);

    std::string config_path, spec_path, graph_path, kind, out_path;
    int n = 0;
    double strength = 0.5;
    bool svg = false;

    auto* simulate = app.add_subcommand("simulate", "Run one experiment from a JSON config");
    simulate->add_option("--config", config_path, "Experiment config JSON")->required();
    simulate->add_flag("--svg", svg, "Also write a minimal trace.svg line chart");

    auto* batch = app.add_subcommand("batch", "Run a belief-kind x graph-kind grid");
    batch->add_option("--spec", spec_path, "Batch spec JSON")->required();

    auto* gen = app.add_subcommand("gen", "Write generated graphs or belief configs");
    gen->require_subcommand(1);
    auto* gen_graph_cmd = gen->add_subcommand("graph", "Write an influence-graph edge list");
    gen_graph_cmd->add_option("--kind", kind, "clique|circular|disconnected|unrelenting|faint")
        ->required();
    gen_graph_cmd->add_option("--n", n, "Agent count")->required();
    gen_graph_cmd->add_option("--strength", strength, "Edge weight C for clique/circular/"
                                                      "disconnected (default 0.5)");
    gen_graph_cmd->add_option("--out", out_path, "Output path")->required();
    auto* gen_beliefs_cmd = gen->add_subcommand("beliefs", "Write an initial belief CSV");
    gen_beliefs_cmd->add_option("--kind", kind, "uniform|mild|extreme|tripolar")->required();
    gen_beliefs_cmd->add_option("--n", n, "Agent count")->required();
    gen_beliefs_cmd->add_option("--out", out_path, "Output path")->required();

    auto* analyze = app.add_subcommand("analyze", "Print a structure report for a graph file");
    analyze->add_option("--graph", graph_path, "Influence-graph edge list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            auto cfg = polarsim::parse_experiment_config(read_json_file(config_path));
            cfg.emit_svg = svg;
            const auto result = polarsim::run_single(cfg);
            std::cout << result.summary_path.string() << "\n";
        } else if (batch->parsed()) {
            polarsim::run_batch(polarsim::parse_batch_spec(read_json_file(spec_path)));
        } else if (gen_graph_cmd->parsed()) {
            polarsim::gen_graph(kind, n, strength, out_path);
        } else if (gen_beliefs_cmd->parsed()) {
            polarsim::gen_beliefs(kind, n, out_path);
        } else if (analyze->parsed()) {
            const auto graph = polarsim::load_graph(graph_path);
            const auto report = polarsim::analyze_structure(graph);
            std::cout << polarsim::structure_to_json(report).dump(2) << "\n";
        }
    } catch (const polarsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const polarsim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const polarsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
