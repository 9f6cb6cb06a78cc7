#pragma once

#include <optional>
#include <span>

#include "polarsim/core.hpp"
#include "polarsim/dynamics.hpp"

namespace polarsim {

/// Tolerance absorbing float summation error in flow sums and row sums;
/// scenario weights are small exact rationals, so anything larger is a bug.
inline constexpr double kFlowTolerance = 1e-12;

/// Structural diagnostics of an influence graph.
struct StructureReport {
    bool strongly_connected = false;
    bool weakly_connected = false;
    bool balanced = false;    // total out-influence equals in-influence per node
    bool reciprocal = false;  // weights symmetric
    bool regular = false;     // equal in-neighborhood sizes
    std::vector<double> imbalance;  // per node: out-flow minus in-flow
};

/// Directed connectivity over positive weights: every ordered pair linked by
/// a path. Self-loops are irrelevant. Single-node graphs count as connected.
bool is_strongly_connected(const InfluenceGraph& graph);

/// Connectivity of the symmetrized positive-support graph.
bool is_weakly_connected(const InfluenceGraph& graph);

/// Per-node row-sum minus column-sum.
std::vector<double> flow_imbalances(const InfluenceGraph& graph);

/// A circulation: every node's imbalance is 0 (within kFlowTolerance).
bool is_balanced(const InfluenceGraph& graph);

/// Weights symmetric under transposition, compared exactly.
bool is_reciprocal(const InfluenceGraph& graph);

/// All agents have equally many in-neighbors.
bool is_regular(const InfluenceGraph& graph);

StructureReport analyze_structure(const InfluenceGraph& graph);

/// Total influence crossing the cut in each direction, for the partition
/// (group_a, complement). Throws std::invalid_argument unless group_a is a
/// non-empty proper subset with valid, distinct indices. For balanced graphs
/// the two flows are equal.
struct CutFlow {
    double a_to_b = 0.0;
    double b_to_a = 0.0;
};
CutFlow group_flow_conservation(const InfluenceGraph& graph, std::span<const int> group_a);

/// Mean of the initial beliefs when the symmetry hypotheses guarantee all
/// agents converge there: the graph must be regular and weakly connected,
/// and reciprocal under confirmation bias / balanced under the classical
/// rule. Empty when the hypotheses fail.
std::optional<double> predict_consensus(const InfluenceGraph& graph, const BeliefConfig& b0,
                                        UpdateRule rule);

/// Row-stochastic matrix; rows sum to 1 within kFlowTolerance.
class StochasticMatrix {
public:
    static StochasticMatrix from_weights(int n, std::vector<double> weights);
    int size() const { return n_; }
    double operator()(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }

private:
    StochasticMatrix(int n, std::vector<double> w) : n_(n), w_(std::move(w)) {}
    int n_;
    std::vector<double> w_;  // row-major
};

/// The row-stochastic matrix whose iteration reproduces the classical
/// update: off-diagonal entries are the scaled transposed influences, the
/// diagonal absorbs the remainder.
StochasticMatrix degroot_matrix(const InfluenceGraph& graph);

/// t-fold matrix-vector application f -> T f.
BeliefConfig degroot_iterate(const StochasticMatrix& t_matrix, BeliefConfig f0, long t);

struct ConvergenceReport {
    bool converged = false;
    std::optional<long> t_converged;        // first recorded step with spread < epsilon
    std::optional<double> consensus_value;  // mean of the final configuration
    double spread_final = 0.0;              // max - min at the horizon
    bool near_borderline = false;  // consensus within borderline_epsilon of an interior boundary
};

ConvergenceReport analyze_convergence(const Trace& trace, double epsilon,
                                      const Discretization& bins, double borderline_epsilon);

/// Evaluation of the four structural conditions that are necessary for
/// polarization to persist: an unbalanced graph, a disconnected graph, an
/// all-extreme start, or a limit sitting on a bin boundary. `unexplained`
/// set means polarization persisted with none of them - a bug detector.
struct PersistenceReport {
    double polarization_final = 0.0;
    bool persistent = false;         // polarization_final > epsilon
    bool not_balanced = false;       // condition (1)
    bool not_weakly_connected = false;  // condition (2)
    bool radical_initial = false;    // condition (3)
    bool borderline_limit = false;   // condition (4)
    bool unexplained = false;
    std::vector<double> imbalance;   // per-node, as in StructureReport
};

PersistenceReport diagnose_persistence(const InfluenceGraph& graph, const BeliefConfig& b0,
                                       const Trace& trace, const Discretization& bins,
                                       double epsilon);

}  // namespace polarsim
