#include "polarsim/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace polarsim {

InfluenceGraph::InfluenceGraph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("agent count must be >= 1");
    w_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) set(i, i, 1.0);
}

InfluenceGraph InfluenceGraph::from_weights(int n, std::vector<double> weights) {
    if (n < 1) throw std::invalid_argument("agent count must be >= 1");
    if (weights.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("weight matrix must be n*n");
    InfluenceGraph g(n);
    g.w_ = std::move(weights);
    return g;
}

Discretization Discretization::uniform(int k) {
    if (k < 1) throw std::invalid_argument("bin count must be >= 1");
    std::vector<double> b(k + 1);
    for (int i = 0; i <= k; ++i) b[i] = static_cast<double>(i) / k;
    return Discretization(std::move(b));
}

Discretization Discretization::from_boundaries(std::vector<double> boundaries) {
    if (boundaries.size() < 2)
        throw std::invalid_argument("discretization needs at least 2 boundaries");
    if (boundaries.front() != 0.0 || boundaries.back() != 1.0)
        throw std::invalid_argument("boundaries must start at 0 and end at 1");
    for (size_t m = 1; m < boundaries.size(); ++m)
        if (!(boundaries[m - 1] < boundaries[m]))
            throw std::invalid_argument("boundaries must be strictly increasing");
    return Discretization(std::move(boundaries));
}

int Discretization::bin_index(double b) const {
    // First boundary > b, minus one; clamps b == 1 into the closed last bin.
    auto it = std::upper_bound(bounds_.begin(), bounds_.end(), b);
    int idx = static_cast<int>(it - bounds_.begin()) - 1;
    return std::min(idx, bins() - 1);
}

ValidationResult validate(const InfluenceGraph& graph, const BeliefConfig& beliefs) {
    ValidationResult r;
    auto fail = [&r](std::string msg) {
        r.ok = false;
        r.issues.push_back(std::move(msg));
    };

    const int n = graph.agents();
    if (beliefs.size() != static_cast<size_t>(n))
        fail("belief count " + std::to_string(beliefs.size()) +
             " does not match agent count " + std::to_string(n));

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = graph(i, j);
            if (i == j && w != 1.0)
                fail("diagonal weight (" + std::to_string(i) + "," + std::to_string(i) +
                     ") = " + std::to_string(w) + ", must be exactly 1");
            else if (!(w >= 0.0 && w <= 1.0))
                fail("weight (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                     std::to_string(w) + " outside [0,1]");
        }
    }
    for (size_t i = 0; i < beliefs.size(); ++i) {
        if (!(beliefs[i] >= 0.0 && beliefs[i] <= 1.0))
            fail("belief of agent " + std::to_string(i) + " = " + std::to_string(beliefs[i]) +
                 " outside [0,1]");
    }
    return r;
}

std::vector<int> neighbors(const InfluenceGraph& graph, int i) {
    const int n = graph.agents();
    if (i < 0 || i >= n) throw std::out_of_range("agent index out of range");
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (graph(j, i) > 0.0) out.push_back(j);
    return out;
}

}  // namespace polarsim
