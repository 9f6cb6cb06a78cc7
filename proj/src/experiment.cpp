#include "polarsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "polarsim/polarization.hpp"

namespace polarsim {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double mean_of(const BeliefConfig& b) {
    return std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&key](const char* a) { return key == a; }) == allowed.end())
            throw ConfigError(what + ": unknown key '" + key + "'");
    }
}

double get_positive(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    const double v = j.at(key).get<double>();
    if (!(v > 0.0)) throw ConfigError(std::string(key) + " must be > 0");
    return v;
}

std::vector<double> parse_bins(const json& j) {
    if (!j.contains("bins")) return {};
    const auto& b = j.at("bins");
    try {
        if (b.is_number_integer()) {
            const auto bounds = Discretization::uniform(b.get<int>()).boundaries();
            return {bounds.begin(), bounds.end()};
        }
        if (b.is_array()) {
            auto v = b.get<std::vector<double>>();
            Discretization::from_boundaries(v);  // validate now, fail at parse time
            return v;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bins: ") + e.what());
    }
    throw ConfigError("bins must be a bin count or a boundary list");
}

}  // namespace

Discretization ExperimentConfig::make_bins() const {
    if (bin_boundaries.empty()) return Discretization::uniform(5);
    return Discretization::from_boundaries(bin_boundaries);
}

ExperimentConfig parse_experiment_config(const json& j) {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    check_keys(j,
               {"n", "belief_kind", "graph_kind", "graph_file", "update_rule", "t_max",
                "epsilon", "bins", "K", "alpha", "record_every", "out_dir"},
               "experiment config");

    ExperimentConfig cfg;

    if (j.contains("belief_kind")) {
        const auto& bk = j.at("belief_kind");
        if (bk.is_string()) {
            cfg.scenario.belief_kind = belief_kind_from_string(bk.get<std::string>());
            if (cfg.scenario.belief_kind == BeliefKind::explicit_list)
                throw ConfigError("explicit beliefs must be given as an array");
        } else if (bk.is_array()) {
            cfg.scenario.belief_kind = BeliefKind::explicit_list;
            for (const auto& v : bk) {
                if (!v.is_number()) throw ConfigError("belief_kind array must hold numbers");
                cfg.scenario.explicit_beliefs.push_back(v.get<double>());
            }
        } else {
            throw ConfigError("belief_kind must be a kind name or an array of beliefs");
        }
    }

    if (j.contains("graph_kind"))
        cfg.scenario.graph_kind = graph_kind_from_string(j.at("graph_kind").get<std::string>());
    if (j.contains("graph_file")) cfg.scenario.graph_file = j.at("graph_file").get<std::string>();
    if (cfg.scenario.graph_kind == GraphKind::file && cfg.scenario.graph_file.empty())
        throw ConfigError("graph_kind 'file' requires graph_file");
    if (cfg.scenario.graph_kind != GraphKind::file && !cfg.scenario.graph_file.empty())
        throw ConfigError("graph_file given but graph_kind is not 'file'");

    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long>() < 1)
            throw ConfigError("n must be a positive integer");
        cfg.scenario.n = j.at("n").get<int>();
    }

    if (j.contains("update_rule"))
        cfg.rule = update_rule_from_string(j.at("update_rule").get<std::string>());

    if (j.contains("t_max")) {
        if (!j.at("t_max").is_number_integer() || j.at("t_max").get<long>() < 0)
            throw ConfigError("t_max must be a non-negative integer");
        cfg.t_max = j.at("t_max").get<long>();
    }

    cfg.epsilon = get_positive(j, "epsilon", cfg.epsilon);
    cfg.K = get_positive(j, "K", cfg.K);
    cfg.alpha = get_positive(j, "alpha", cfg.alpha);
    cfg.bin_boundaries = parse_bins(j);

    if (j.contains("record_every")) {
        if (!j.at("record_every").is_number_integer() || j.at("record_every").get<long>() < 1)
            throw ConfigError("record_every must be a positive integer");
        cfg.record_every = j.at("record_every").get<int>();
    }

    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    return cfg;
}

ResolvedExperiment resolve_experiment(ExperimentConfig cfg) {
    auto& sc = cfg.scenario;
    if (sc.n == 0 && sc.belief_kind == BeliefKind::explicit_list)
        sc.n = static_cast<int>(sc.explicit_beliefs.size());

    std::optional<InfluenceGraph> graph;
    if (sc.graph_kind == GraphKind::file) {
        graph = load_graph(sc.graph_file);
        if (sc.n == 0) sc.n = graph->agents();
    }
    if (sc.n == 0) sc.n = sc.graph_kind == GraphKind::circular ? 12 : 1000;
    if (cfg.t_max < 0) cfg.t_max = sc.n <= 100 ? 500 : 2000;

    if (!graph) {
        try {
            graph = make_graph(sc);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    BeliefConfig beliefs;
    try {
        beliefs = make_beliefs(sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const ValidationResult vr = validate(*graph, beliefs);
    if (!vr.ok) {
        std::string msg = "invalid scenario:";
        for (const auto& issue : vr.issues) msg += "\n  " + issue;
        throw ValidationError(msg);
    }
    return ResolvedExperiment{std::move(cfg), std::move(*graph), std::move(beliefs)};
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["n"] = cfg.scenario.n;
    if (cfg.scenario.belief_kind == BeliefKind::explicit_list)
        j["belief_kind"] = cfg.scenario.explicit_beliefs;
    else
        j["belief_kind"] = to_string(cfg.scenario.belief_kind);
    j["graph_kind"] = to_string(cfg.scenario.graph_kind);
    j["graph_file"] =
        cfg.scenario.graph_file.empty() ? json(nullptr) : json(cfg.scenario.graph_file);
    j["update_rule"] = to_string(cfg.rule);
    j["t_max"] = cfg.t_max;
    j["epsilon"] = cfg.epsilon;
    j["bins"] = cfg.bin_boundaries.empty()
                    ? json(5)
                    : json(cfg.bin_boundaries);
    j["K"] = cfg.K;
    j["alpha"] = cfg.alpha;
    j["record_every"] = cfg.record_every;
    j["out_dir"] = cfg.out_dir;
    return j;
}

json structure_to_json(const StructureReport& r) {
    return json{{"strongly_connected", r.strongly_connected},
                {"weakly_connected", r.weakly_connected},
                {"balanced", r.balanced},
                {"reciprocal", r.reciprocal},
                {"regular", r.regular},
                {"imbalance", r.imbalance}};
}

json convergence_to_json(const ConvergenceReport& r) {
    return json{{"converged", r.converged},
                {"t_converged", r.t_converged ? json(*r.t_converged) : json(nullptr)},
                {"consensus_value", r.consensus_value ? json(*r.consensus_value) : json(nullptr)},
                {"spread_final", r.spread_final},
                {"near_borderline", r.near_borderline}};
}

json persistence_to_json(const PersistenceReport& r) {
    return json{{"polarization_final", r.polarization_final},
                {"persistent", r.persistent},
                {"not_balanced", r.not_balanced},
                {"not_weakly_connected", r.not_weakly_connected},
                {"radical_initial", r.radical_initial},
                {"borderline_limit", r.borderline_limit},
                {"unexplained", r.unexplained}};
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    const size_t n = trace.configs.front().size();
    out << 't';
    for (size_t i = 0; i < n; ++i) out << ",b_" << i;
    out << ",rho\n";
    for (size_t k = 0; k < trace.steps.size(); ++k) {
        out << trace.steps[k];
        for (double b : trace.configs[k]) out << ',' << fmt(b);
        out << ',' << fmt(trace.polarization[k]) << '\n';
    }
    if (!out) throw IoError("error writing " + path.string());
}

Trace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty trace file");

    Trace trace;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> fields;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            double v;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": bad number");
            fields.push_back(v);
            p = next < end && *next == ',' ? next + 1 : next;
        }
        if (fields.size() < 3)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": short row");
        trace.steps.push_back(static_cast<long>(fields.front()));
        trace.configs.emplace_back(fields.begin() + 1, fields.end() - 1);
        trace.polarization.push_back(fields.back());
    }
    if (trace.steps.empty()) throw ConfigError(path.string() + ": no data rows");
    return trace;
}

void write_trace_svg(const Trace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());

    const double width = 800, height = 420, left = 40, top = 10, plot_w = 740, plot_h = 380;
    const double t_last = std::max<long>(trace.steps.back(), 1);
    const double rho_max = std::max(*std::max_element(trace.polarization.begin(),
                                                      trace.polarization.end()),
                                    1e-300);
    auto x = [&](long t) { return left + plot_w * (static_cast<double>(t) / t_last); };
    auto y_belief = [&](double b) { return top + plot_h * (1.0 - b); };
    auto y_rho = [&](double r) { return top + plot_h * (1.0 - r / rho_max); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(width) << ' '
        << fmt(height) << "\">\n";
    out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot_w)
        << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#999\"/>\n";

    const size_t n = trace.configs.front().size();
    for (size_t agent = 0; agent < n; ++agent) {
        out << "<polyline fill=\"none\" stroke=\"#4477aa\" stroke-opacity=\"0.35\" points=\"";
        for (size_t k = 0; k < trace.steps.size(); ++k) {
            if (k) out << ' ';
            out << fmt(x(trace.steps[k])) << ',' << fmt(y_belief(trace.configs[k][agent]));
        }
        out << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < trace.steps.size(); ++k) {
        if (k) out << ' ';
        out << fmt(x(trace.steps[k])) << ',' << fmt(y_rho(trace.polarization[k]));
    }
    out << "\"/>\n</svg>\n";
    if (!out) throw IoError("error writing " + path.string());
}

RunResult run_single(const ExperimentConfig& raw_cfg) {
    ResolvedExperiment rx = resolve_experiment(raw_cfg);
    const ExperimentConfig& cfg = rx.config;
    if (cfg.out_dir.empty()) throw ConfigError("out_dir is required");
    const Discretization bins = cfg.make_bins();

    EvolveParams params;
    params.rule = cfg.rule;
    params.t_max = cfg.t_max;
    params.K = cfg.K;
    params.alpha = cfg.alpha;
    params.record_every = cfg.record_every;
    params.graph_name = cfg.scenario.graph_kind == GraphKind::file
                            ? cfg.scenario.graph_file
                            : to_string(cfg.scenario.graph_kind);

    RunResult res;
    res.trace = evolve(rx.beliefs, rx.graph, bins, params);
    res.structure = analyze_structure(rx.graph);
    res.convergence = analyze_convergence(res.trace, cfg.epsilon, bins, cfg.epsilon);
    res.persistence = diagnose_persistence(rx.graph, rx.beliefs, res.trace, bins, cfg.epsilon);
    res.consensus_predicted = predict_consensus(rx.graph, rx.beliefs, cfg.rule);
    res.consensus_observed = mean_of(res.trace.configs.back());

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create " + cfg.out_dir + ": " + ec.message());

    const std::filesystem::path dir(cfg.out_dir);
    res.trace_path = dir / "trace.csv";
    res.summary_path = dir / "summary.json";
    write_trace_csv(res.trace, res.trace_path);
    if (cfg.emit_svg) write_trace_svg(res.trace, dir / "trace.svg");

    json files{{"trace", "trace.csv"}, {"summary", "summary.json"}};
    if (cfg.emit_svg) files["svg"] = "trace.svg";
    res.summary = json{
        {"config", config_to_json(cfg)},
        {"structure", structure_to_json(res.structure)},
        {"convergence", convergence_to_json(res.convergence)},
        {"persistence", persistence_to_json(res.persistence)},
        {"consensus",
         json{{"predicted",
               res.consensus_predicted ? json(*res.consensus_predicted) : json(nullptr)},
              {"observed", res.consensus_observed}}},
        {"polarization_initial", res.trace.polarization.front()},
        {"polarization_final", res.trace.polarization.back()},
        {"files", files},
    };

    std::ofstream out(res.summary_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + res.summary_path.string());
    out << res.summary.dump(2) << '\n';
    if (!out) throw IoError("error writing " + res.summary_path.string());
    return res;
}

BatchSpec parse_batch_spec(const json& j) {
    if (!j.is_object()) throw ConfigError("batch spec must be a JSON object");
    check_keys(j,
               {"belief_kinds", "graph_kinds", "n", "update_rule", "t_max", "epsilon", "bins",
                "K", "alpha", "record_every", "out_dir"},
               "batch spec");

    BatchSpec spec;
    if (!j.contains("belief_kinds") || !j.at("belief_kinds").is_array() ||
        j.at("belief_kinds").empty())
        throw ConfigError("belief_kinds must be a non-empty array");
    for (const auto& v : j.at("belief_kinds"))
        spec.belief_kinds.push_back(belief_kind_from_string(v.get<std::string>()));

    if (!j.contains("graph_kinds") || !j.at("graph_kinds").is_array() ||
        j.at("graph_kinds").empty())
        throw ConfigError("graph_kinds must be a non-empty array");
    for (const auto& v : j.at("graph_kinds")) {
        const GraphKind k = graph_kind_from_string(v.get<std::string>());
        if (k == GraphKind::file) throw ConfigError("batch axes cannot contain 'file'");
        spec.graph_kinds.push_back(k);
    }
    for (const auto k : spec.belief_kinds)
        if (k == BeliefKind::explicit_list)
            throw ConfigError("batch axes cannot contain explicit belief lists");

    if (!j.contains("n")) throw ConfigError("batch spec requires n");
    if (!j.at("n").is_number_integer() || j.at("n").get<long>() < 1)
        throw ConfigError("n must be a positive integer");
    spec.n = j.at("n").get<int>();

    if (j.contains("update_rule"))
        spec.rule = update_rule_from_string(j.at("update_rule").get<std::string>());
    if (j.contains("t_max")) {
        if (!j.at("t_max").is_number_integer() || j.at("t_max").get<long>() < 0)
            throw ConfigError("t_max must be a non-negative integer");
        spec.t_max = j.at("t_max").get<long>();
    }
    spec.epsilon = get_positive(j, "epsilon", spec.epsilon);
    spec.K = get_positive(j, "K", spec.K);
    spec.alpha = get_positive(j, "alpha", spec.alpha);
    spec.bin_boundaries = parse_bins(j);
    if (j.contains("record_every")) {
        if (!j.at("record_every").is_number_integer() || j.at("record_every").get<long>() < 1)
            throw ConfigError("record_every must be a positive integer");
        spec.record_every = j.at("record_every").get<int>();
    }
    if (!j.contains("out_dir")) throw ConfigError("batch spec requires out_dir");
    spec.out_dir = j.at("out_dir").get<std::string>();
    return spec;
}

void run_batch(const BatchSpec& spec) {
    struct Cell {
        GraphKind graph;
        BeliefKind belief;
        std::string dir;
        std::exception_ptr error;
        std::string message;
    };
    std::vector<Cell> cells;
    for (const GraphKind g : spec.graph_kinds)
        for (const BeliefKind b : spec.belief_kinds)
            cells.push_back({g, b, to_string(g) + "_" + to_string(b), nullptr, {}});

    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw IoError("cannot create " + spec.out_dir + ": " + ec.message());

    const auto cell_count = static_cast<int>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cell_count; ++c) {
        Cell& cell = cells[c];
        try {
            ExperimentConfig cfg;
            cfg.scenario.belief_kind = cell.belief;
            cfg.scenario.graph_kind = cell.graph;
            cfg.scenario.n = spec.n;
            cfg.rule = spec.rule;
            cfg.t_max = spec.t_max;
            cfg.epsilon = spec.epsilon;
            cfg.bin_boundaries = spec.bin_boundaries;
            cfg.K = spec.K;
            cfg.alpha = spec.alpha;
            cfg.record_every = spec.record_every;
            cfg.out_dir = (std::filesystem::path(spec.out_dir) / cell.dir).string();
            run_single(cfg);
        } catch (const std::exception& e) {
            cell.error = std::current_exception();
            cell.message = e.what();
        }
    }

    json index_cells = json::array();
    for (const Cell& cell : cells) {
        index_cells.push_back(json{
            {"graph_kind", to_string(cell.graph)},
            {"belief_kind", to_string(cell.belief)},
            {"dir", cell.dir},
            {"trace", cell.dir + "/trace.csv"},
            {"summary", cell.dir + "/summary.json"},
            {"status", cell.error ? "error" : "ok"},
            {"error", cell.error ? json(cell.message) : json(nullptr)},
        });
    }
    const json index{{"cells", index_cells}, {"out_dir", spec.out_dir}};
    const auto index_path = std::filesystem::path(spec.out_dir) / "index.json";
    std::ofstream out(index_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + index_path.string());
    out << index.dump(2) << '\n';
    if (!out) throw IoError("error writing " + index_path.string());

    for (const Cell& cell : cells)
        if (cell.error) std::rethrow_exception(cell.error);
}

void gen_graph(const std::string& kind, int n, double strength,
               const std::filesystem::path& out) {
    ScenarioSpec sc;
    sc.graph_kind = graph_kind_from_string(kind);
    if (sc.graph_kind == GraphKind::file)
        throw ConfigError("cannot generate graph kind 'file'");
    sc.n = n;
    sc.strength = strength;
    try {
        save_graph(make_graph(sc), out);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void gen_beliefs(const std::string& kind, int n, const std::filesystem::path& out) {
    ScenarioSpec sc;
    sc.belief_kind = belief_kind_from_string(kind);
    if (sc.belief_kind == BeliefKind::explicit_list)
        throw ConfigError("cannot generate belief kind 'explicit'");
    sc.n = n;
    BeliefConfig b;
    try {
        b = make_beliefs(sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write " + out.string());
    for (size_t i = 0; i < b.size(); ++i) f << (i ? "," : "") << fmt(b[i]);
    f << '\n';
    if (!f) throw IoError("error writing " + out.string());
}

}  // namespace polarsim
