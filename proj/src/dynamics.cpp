#include "polarsim/dynamics.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "polarsim/errors.hpp"
#include "polarsim/polarization.hpp"

namespace polarsim {

UpdateRule update_rule_from_string(const std::string& s) {
    if (s == "confirmation-bias") return UpdateRule::confirmation_bias;
    if (s == "classical") return UpdateRule::classical;
    throw ConfigError("unknown update rule: " + s);
}

std::string to_string(UpdateRule rule) {
    return rule == UpdateRule::confirmation_bias ? "confirmation-bias" : "classical";
}

NeighborTable NeighborTable::build(const InfluenceGraph& graph) {
    const int n = graph.agents();
    NeighborTable nt;
    nt.offset.assign(n + 1, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (graph(j, i) > 0.0) ++nt.offset[i + 1];
    for (int i = 0; i < n; ++i) nt.offset[i + 1] += nt.offset[i];
    nt.source.resize(nt.offset[n]);
    nt.weight.resize(nt.offset[n]);
    std::vector<int> cursor(nt.offset.begin(), nt.offset.end() - 1);
    for (int j = 0; j < n; ++j) {   // ascending j per agent
        for (int i = 0; i < n; ++i) {
            const double w = graph(j, i);
            if (w > 0.0) {
                nt.source[cursor[i]] = j;
                nt.weight[cursor[i]] = w;
                ++cursor[i];
            }
        }
    }
    return nt;
}

namespace {

// Shared per-agent update; both the serial and the OpenMP kernels call this
// so their floating-point behavior is identical.
inline double agent_step_cb(const NeighborTable& nt, std::span<const double> in, int i) {
    const double bi = in[i];
    const int lo = nt.offset[i], hi = nt.offset[i + 1];
    double sum = 0.0;
    for (int k = lo; k < hi; ++k) {
        const double diff = in[nt.source[k]] - bi;
        sum += (1.0 - std::abs(diff)) * nt.weight[k] * diff;
    }
    return bi + sum / (hi - lo);  // |A_i| >= 1: the diagonal is always positive
}

inline double agent_step_classical(const NeighborTable& nt, std::span<const double> in,
                                   int i) {
    const double bi = in[i];
    const int lo = nt.offset[i], hi = nt.offset[i + 1];
    double sum = 0.0;
    for (int k = lo; k < hi; ++k) sum += nt.weight[k] * (in[nt.source[k]] - bi);
    return bi + sum / (hi - lo);
}

}  // namespace

void step_cb(const NeighborTable& nt, std::span<const double> in, std::span<double> out) {
    const int n = nt.agents();
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) out[i] = agent_step_cb(nt, in, i);
}

void step_classical(const NeighborTable& nt, std::span<const double> in,
                    std::span<double> out) {
    const int n = nt.agents();
#pragma omp parallel for schedule(static) if (n > 64)
    for (int i = 0; i < n; ++i) out[i] = agent_step_classical(nt, in, i);
}

namespace serial {

void step_cb(const NeighborTable& nt, std::span<const double> in, std::span<double> out) {
    for (int i = 0; i < nt.agents(); ++i) out[i] = agent_step_cb(nt, in, i);
}

void step_classical(const NeighborTable& nt, std::span<const double> in,
                    std::span<double> out) {
    for (int i = 0; i < nt.agents(); ++i) out[i] = agent_step_classical(nt, in, i);
}

}  // namespace serial

BeliefConfig step_cb(const BeliefConfig& beliefs, const InfluenceGraph& graph) {
    BeliefConfig out(beliefs.size());
    step_cb(NeighborTable::build(graph), beliefs, out);
    return out;
}

BeliefConfig step_classical(const BeliefConfig& beliefs, const InfluenceGraph& graph) {
    BeliefConfig out(beliefs.size());
    step_classical(NeighborTable::build(graph), beliefs, out);
    return out;
}

bool is_radical(const BeliefConfig& beliefs) {
    for (double b : beliefs)
        if (b != 0.0 && b != 1.0) return false;
    return true;
}

Trace evolve(const BeliefConfig& b0, const InfluenceGraph& graph, const Discretization& bins,
             const EvolveParams& params) {
    if (params.t_max < 0) throw std::invalid_argument("t_max must be >= 0");
    if (params.record_every < 1) throw std::invalid_argument("record_every must be >= 1");

    const NeighborTable nt = NeighborTable::build(graph);
    Trace trace;
    trace.rule_name = to_string(params.rule);
    trace.graph_name = params.graph_name;
    trace.bin_boundaries.assign(bins.boundaries().begin(), bins.boundaries().end());
    trace.K = params.K;
    trace.alpha = params.alpha;

    auto record = [&](long t, const BeliefConfig& b) {
        trace.steps.push_back(t);
        trace.configs.push_back(b);
        trace.polarization.push_back(polarization(b, bins, params.K, params.alpha));
    };

    BeliefConfig cur = b0;
    BeliefConfig next(b0.size());
    record(0, cur);

    for (long t = 1; t <= params.t_max; ++t) {
        if (params.rule == UpdateRule::confirmation_bias)
            step_cb(nt, cur, next);
        else
            step_classical(nt, cur, next);

#ifndef NDEBUG
        // New values never escape the previous extremes; no clamping needed.
        double lo = cur[0], hi = cur[0];
        for (double b : cur) {
            if (b < lo) lo = b;
            if (b > hi) hi = b;
        }
        for (double b : next) assert(b >= lo && b <= hi);
#endif
        std::swap(cur, next);
        if (t % params.record_every == 0 || t == params.t_max) record(t, cur);
    }
    return trace;
}

}  // namespace polarsim
