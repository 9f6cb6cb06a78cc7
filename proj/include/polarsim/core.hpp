#pragma once

#include <span>
#include <string>
#include <vector>

namespace polarsim {

/// One belief value in [0,1] per agent.
using BeliefConfig = std::vector<double>;

/// Dense weighted influence graph. Entry (i,j) is the direct influence of
/// agent i on agent j, in [0,1]. The diagonal is fixed at 1 (self-confidence).
class InfluenceGraph {
public:
    /// Graph with diagonal 1 and all other weights 0.
    explicit InfluenceGraph(int n);

    /// Takes a full row-major n*n weight matrix. Throws std::invalid_argument
    /// on a size mismatch; weight-range checks are validate()'s job.
    static InfluenceGraph from_weights(int n, std::vector<double> weights);

    int agents() const { return n_; }

    double operator()(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double w) { w_[static_cast<size_t>(i) * n_ + j] = w; }

    std::span<const double> row(int i) const {
        return {w_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
    }
    const std::vector<double>& weights() const { return w_; }

private:
    int n_;
    std::vector<double> w_;  // row-major
};

/// Partition of [0,1] into k bins. Bin m is [boundaries[m], boundaries[m+1]),
/// except the last bin which is closed at 1. A value exactly on an interior
/// boundary therefore belongs to the bin on its right.
class Discretization {
public:
    /// k equal-width bins.
    static Discretization uniform(int k);

    /// Explicit boundary list: strictly increasing, first 0, last 1.
    /// Throws std::invalid_argument otherwise.
    static Discretization from_boundaries(std::vector<double> boundaries);

    int bins() const { return static_cast<int>(bounds_.size()) - 1; }
    int bin_index(double b) const;
    double midpoint(int m) const { return (bounds_[m] + bounds_[m + 1]) / 2.0; }
    std::span<const double> boundaries() const { return bounds_; }

    /// Boundaries other than 0 and 1 (the "borderline" points).
    std::span<const double> interior_boundaries() const {
        return {bounds_.data() + 1, bounds_.size() - 2};
    }

private:
    explicit Discretization(std::vector<double> b) : bounds_(std::move(b)) {}
    std::vector<double> bounds_;
};

/// Time-indexed record of one run: recorded steps, the belief configuration
/// and polarization value at each, plus enough metadata to be self-describing.
struct Trace {
    std::vector<long> steps;            // ascending, steps.front() == 0
    std::vector<BeliefConfig> configs;  // same length as steps
    std::vector<double> polarization;   // same length as steps
    std::string rule_name;
    std::string graph_name;
    std::vector<double> bin_boundaries;
    double K = 0.0;
    double alpha = 0.0;
};

struct ValidationResult {
    bool ok = true;
    std::vector<std::string> issues;  // every violation, not just the first
};

/// Checks the graph/belief invariants: weights and beliefs in [0,1],
/// diagonal exactly 1, matching agent counts. Pure; collects all issues.
ValidationResult validate(const InfluenceGraph& graph, const BeliefConfig& beliefs);

/// In-neighborhood of agent i: every j with positive influence on i.
/// Always contains i itself (the diagonal is 1). Sorted ascending.
/// Throws std::out_of_range for a bad index.
std::vector<int> neighbors(const InfluenceGraph& graph, int i);

}  // namespace polarsim
