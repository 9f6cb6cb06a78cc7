#pragma once

#include <cmath>
#include <span>
#include <string>

#include "polarsim/core.hpp"

namespace polarsim {

enum class UpdateRule { confirmation_bias, classical };

UpdateRule update_rule_from_string(const std::string& s);
std::string to_string(UpdateRule rule);

/// Confirmation-bias factor 1 - |b_j - b_i|: how much agent i discounts
/// agent j's opinion. 1 for identical beliefs, 0 for extreme opposites.
inline double cb_factor(double b_i, double b_j) { return 1.0 - std::abs(b_j - b_i); }

/// Positive in-neighborhoods of every agent in CSR layout, built once from a
/// graph and reused across steps. source/weight entries for agent i live in
/// [offset[i], offset[i+1]) with source ascending, so a step is contiguous
/// and its summation order reproducible.
struct NeighborTable {
    std::vector<int> offset;     // size n+1
    std::vector<int> source;     // in-neighbor j
    std::vector<double> weight;  // matching influence of j on i
    int agents() const { return static_cast<int>(offset.size()) - 1; }
    static NeighborTable build(const InfluenceGraph& graph);
};

// Kernel form of the two update rules: one synchronous step reading `in`
// and writing `out` (distinct buffers). The OpenMP versions split agents
// across threads; each agent's sum stays sequential, so results are
// bit-identical to the serial reference at any thread count.
void step_cb(const NeighborTable& nt, std::span<const double> in, std::span<double> out);
void step_classical(const NeighborTable& nt, std::span<const double> in,
                    std::span<double> out);

namespace serial {
void step_cb(const NeighborTable& nt, std::span<const double> in, std::span<double> out);
void step_classical(const NeighborTable& nt, std::span<const double> in,
                    std::span<double> out);
}  // namespace serial

/// One confirmation-bias step: each agent averages its in-neighbors' pulls,
/// discounted by the bias factor. Convenience wrapper over the kernel.
BeliefConfig step_cb(const BeliefConfig& beliefs, const InfluenceGraph& graph);

/// One classical (bias-free) averaging step.
BeliefConfig step_classical(const BeliefConfig& beliefs, const InfluenceGraph& graph);

/// True iff every agent holds exactly 0 or 1.
bool is_radical(const BeliefConfig& beliefs);

struct EvolveParams {
    UpdateRule rule = UpdateRule::confirmation_bias;
    long t_max = 0;
    double K = 1000.0;
    double alpha = 1.6;
    int record_every = 1;    // thins recorded steps; the final step is always kept
    std::string graph_name;  // trace metadata only
};

/// Iterates the chosen rule t_max times from b0, recording configurations
/// and polarization. Deterministic: identical inputs give bit-identical
/// traces regardless of thread count.
Trace evolve(const BeliefConfig& b0, const InfluenceGraph& graph, const Discretization& bins,
             const EvolveParams& params);

}  // namespace polarsim
