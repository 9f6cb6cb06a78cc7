#include "polarsim/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polarsim/errors.hpp"

namespace polarsim {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

BeliefConfig beliefs_uniform(int n) {
    require(n >= 1, "uniform beliefs need n >= 1");
    if (n == 1) return {0.0};  // formula divides by n-1; single-agent convention
    BeliefConfig b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<double>(i) / (n - 1);
    return b;
}

BeliefConfig beliefs_mild(int n) {
    require(n >= 2, "mild beliefs need n >= 2");
    const int h = ceil_div(n, 2);
    BeliefConfig b(n);
    for (int i = 0; i < n; ++i)
        b[i] = i < h ? 0.2 * i / h + 0.2 : 0.2 * (i - h) / (n - h) + 0.6;
    return b;
}

BeliefConfig beliefs_extreme(int n) {
    require(n >= 2, "extreme beliefs need n >= 2");
    const int h = ceil_div(n, 2);
    BeliefConfig b(n);
    for (int i = 0; i < n; ++i)
        b[i] = i < h ? 0.2 * i / h : 0.2 * (i - h) / (n - h) + 0.8;
    return b;
}

BeliefConfig beliefs_tripolar(int n) {
    require(n >= 3, "tripolar beliefs need n >= 3");
    const int lo = n / 3;               // floor(n/3)
    const int hi = ceil_div(2 * n, 3);  // ceil(2n/3)
    BeliefConfig b(n);
    for (int i = 0; i < n; ++i) {
        if (i < lo)
            b[i] = 0.2 * i / lo;
        else if (i < hi)
            b[i] = 0.2 * (i - lo) / (hi - lo) + 0.4;
        else
            b[i] = 0.2 * (i - hi) / (n - hi) + 0.8;
    }
    return b;
}

InfluenceGraph graph_clique(int n, double c) {
    require(n >= 1, "clique needs n >= 1");
    require(c > 0.0 && c <= 1.0, "clique strength must be in (0,1]");
    InfluenceGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g.set(i, j, c);
    return g;
}

InfluenceGraph graph_circular(int n, double c) {
    require(n >= 2, "circular graph needs n >= 2");
    require(c > 0.0 && c <= 1.0, "circular strength must be in (0,1]");
    InfluenceGraph g(n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (j != i) g.set(i, j, c);
    }
    return g;
}

InfluenceGraph graph_disconnected(int n, double c) {
    require(n >= 2, "disconnected graph needs n >= 2");
    require(c > 0.0 && c <= 1.0, "group strength must be in (0,1]");
    const int h = ceil_div(n, 2);
    InfluenceGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (i < h) == (j < h)) g.set(i, j, c);
    return g;
}

InfluenceGraph graph_unrelenting(int n) {
    require(n >= 3, "unrelenting graph needs n >= 3");
    InfluenceGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double w = 0.0;
            if ((i == 0 && j != n - 1) || (i == n - 1 && j != 0))
                w = 0.6;
            else if (j == 0 || j == n - 1)
                w = 0.0;
            else
                w = 0.1;
            g.set(i, j, w);
        }
    }
    return g;
}

InfluenceGraph graph_faint(int n) {
    require(n >= 2, "faint graph needs n >= 2");
    // Group split uses '<=' here, unlike the disconnected generator's '<';
    // the two sources define their thresholds differently and we keep both.
    const int h = ceil_div(n, 2);
    InfluenceGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g.set(i, j, (i <= h) == (j <= h) ? 0.5 : 0.1);
    return g;
}

namespace {

[[noreturn]] void file_error(const std::filesystem::path& path, int line, const std::string& msg) {
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

InfluenceGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file: " + path.string());

    std::string line;
    int lineno = 0;
    int n = -1;
    std::set<std::pair<int, int>> seen;
    InfluenceGraph g(1);

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        if (n < 0) {
            std::string header;
            if (!(ss >> header)) continue;  // blank/comment line before header
            if (header.rfind("n=", 0) != 0)
                file_error(path, lineno, "expected 'n=<count>' header, got '" + header + "'");
            int value = 0;
            const char* first = header.data() + 2;
            const char* last = header.data() + header.size();
            auto [p, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || p != last || value < 1)
                file_error(path, lineno, "bad agent count in header");
            std::string rest;
            if (ss >> rest) file_error(path, lineno, "trailing text after header");
            n = value;
            g = InfluenceGraph(n);
            continue;
        }
        int src, dst;
        double w;
        if (!(ss >> src)) continue;  // blank or comment-only line
        if (!(ss >> dst >> w)) file_error(path, lineno, "expected '<src> <dst> <weight>'");
        std::string rest;
        if (ss >> rest) file_error(path, lineno, "trailing text after edge");
        if (src < 0 || src >= n || dst < 0 || dst >= n)
            file_error(path, lineno, "agent index outside 0.." + std::to_string(n - 1));
        if (!(w >= 0.0 && w <= 1.0)) file_error(path, lineno, "weight outside [0,1]");
        if (src == dst) {
            if (w != 1.0) file_error(path, lineno, "self-influence is fixed at 1");
            continue;
        }
        if (!seen.insert({src, dst}).second)
            file_error(path, lineno, "duplicate edge " + std::to_string(src) + " -> " +
                                         std::to_string(dst));
        g.set(src, dst, w);
    }
    if (n < 0) throw ConfigError(path.string() + ": missing 'n=<count>' header");
    return g;
}

void save_graph(const InfluenceGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write graph file: " + path.string());
    out << "n=" << graph.agents() << "\n";
    char buf[32];
    for (int i = 0; i < graph.agents(); ++i) {
        for (int j = 0; j < graph.agents(); ++j) {
            if (i == j || graph(i, j) <= 0.0) continue;
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, graph(i, j));
            out << i << ' ' << j << ' ' << std::string_view(buf, p - buf) << "\n";
        }
    }
    if (!out) throw IoError("error writing graph file: " + path.string());
}

BeliefKind belief_kind_from_string(const std::string& s) {
    if (s == "uniform") return BeliefKind::uniform;
    if (s == "mild") return BeliefKind::mild;
    if (s == "extreme") return BeliefKind::extreme;
    if (s == "tripolar") return BeliefKind::tripolar;
    if (s == "explicit") return BeliefKind::explicit_list;
    throw ConfigError("unknown belief kind: " + s);
}

GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "clique") return GraphKind::clique;
    if (s == "circular") return GraphKind::circular;
    if (s == "disconnected") return GraphKind::disconnected;
    if (s == "unrelenting") return GraphKind::unrelenting;
    if (s == "faint") return GraphKind::faint;
    if (s == "file") return GraphKind::file;
    throw ConfigError("unknown graph kind: " + s);
}

std::string to_string(BeliefKind k) {
    switch (k) {
        case BeliefKind::uniform: return "uniform";
        case BeliefKind::mild: return "mild";
        case BeliefKind::extreme: return "extreme";
        case BeliefKind::tripolar: return "tripolar";
        case BeliefKind::explicit_list: return "explicit";
    }
    return "?";
}

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::clique: return "clique";
        case GraphKind::circular: return "circular";
        case GraphKind::disconnected: return "disconnected";
        case GraphKind::unrelenting: return "unrelenting";
        case GraphKind::faint: return "faint";
        case GraphKind::file: return "file";
    }
    return "?";
}

BeliefConfig make_beliefs(const ScenarioSpec& spec) {
    switch (spec.belief_kind) {
        case BeliefKind::uniform: return beliefs_uniform(spec.n);
        case BeliefKind::mild: return beliefs_mild(spec.n);
        case BeliefKind::extreme: return beliefs_extreme(spec.n);
        case BeliefKind::tripolar: return beliefs_tripolar(spec.n);
        case BeliefKind::explicit_list: return spec.explicit_beliefs;
    }
    throw std::logic_error("unreachable belief kind");
}

InfluenceGraph make_graph(const ScenarioSpec& spec) {
    switch (spec.graph_kind) {
        case GraphKind::clique: return graph_clique(spec.n, spec.strength);
        case GraphKind::circular: return graph_circular(spec.n, spec.strength);
        case GraphKind::disconnected: return graph_disconnected(spec.n, spec.strength);
        case GraphKind::unrelenting: return graph_unrelenting(spec.n);
        case GraphKind::faint: return graph_faint(spec.n);
        case GraphKind::file: return load_graph(spec.graph_file);
    }
    throw std::logic_error("unreachable graph kind");
}

}  // namespace polarsim
