#include "polarsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace polarsim {

namespace {

// Iterative Tarjan over the positive-weight digraph; recursion would
// overflow on long path graphs loaded from files.
int count_sccs(const InfluenceGraph& g) {
    const int n = g.agents();
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::pair<int, int>> frames;  // (node, next candidate child)
    int next_index = 0, sccs = 0;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        frames.emplace_back(root, 0);

        while (!frames.empty()) {
            const int v = frames.back().first;
            bool descended = false;
            while (frames.back().second < n) {
                const int j = frames.back().second++;
                if (j == v || g(v, j) <= 0.0) continue;
                if (index[j] == -1) {
                    index[j] = lowlink[j] = next_index++;
                    stack.push_back(j);
                    on_stack[j] = 1;
                    frames.emplace_back(j, 0);
                    descended = true;
                    break;
                }
                if (on_stack[j]) lowlink[v] = std::min(lowlink[v], index[j]);
            }
            if (descended) continue;

            if (lowlink[v] == index[v]) {
                ++sccs;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                } while (w != v);
            }
            frames.pop_back();
            if (!frames.empty()) {
                const int parent = frames.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return sccs;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double mean(const BeliefConfig& b) {
    return std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
}

double spread(const BeliefConfig& b) {
    const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
    return *hi - *lo;
}

bool within_of_interior_boundary(double v, const Discretization& bins, double tol) {
    for (double boundary : bins.interior_boundaries())
        if (std::abs(v - boundary) <= tol) return true;
    return false;
}

}  // namespace

bool is_strongly_connected(const InfluenceGraph& graph) { return count_sccs(graph) == 1; }

bool is_weakly_connected(const InfluenceGraph& graph) {
    const int n = graph.agents();
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (graph(i, j) > 0.0 || graph(j, i) > 0.0) uf.unite(i, j);
    for (int i = 1; i < n; ++i)
        if (uf.find(i) != uf.find(0)) return false;
    return true;
}

std::vector<double> flow_imbalances(const InfluenceGraph& graph) {
    const int n = graph.agents();
    std::vector<double> imbalance(n);
    for (int i = 0; i < n; ++i) {
        double out_flow = 0.0, in_flow = 0.0;
        for (int j = 0; j < n; ++j) {
            out_flow += graph(i, j);
            in_flow += graph(j, i);
        }
        imbalance[i] = out_flow - in_flow;  // the diagonal term cancels
    }
    return imbalance;
}

bool is_balanced(const InfluenceGraph& graph) {
    for (double d : flow_imbalances(graph))
        if (std::abs(d) > kFlowTolerance) return false;
    return true;
}

bool is_reciprocal(const InfluenceGraph& graph) {
    const int n = graph.agents();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (graph(i, j) != graph(j, i)) return false;
    return true;
}

bool is_regular(const InfluenceGraph& graph) {
    const int n = graph.agents();
    int first = -1;
    for (int i = 0; i < n; ++i) {
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (graph(j, i) > 0.0) ++count;
        if (first == -1)
            first = count;
        else if (count != first)
            return false;
    }
    return true;
}

StructureReport analyze_structure(const InfluenceGraph& graph) {
    StructureReport r;
    r.strongly_connected = is_strongly_connected(graph);
    r.weakly_connected = is_weakly_connected(graph);
    r.imbalance = flow_imbalances(graph);
    r.balanced = std::all_of(r.imbalance.begin(), r.imbalance.end(),
                             [](double d) { return std::abs(d) <= kFlowTolerance; });
    r.reciprocal = is_reciprocal(graph);
    r.regular = is_regular(graph);
    return r;
}

CutFlow group_flow_conservation(const InfluenceGraph& graph, std::span<const int> group_a) {
    const int n = graph.agents();
    std::vector<char> in_a(n, 0);
    for (int i : group_a) {
        if (i < 0 || i >= n) throw std::invalid_argument("partition index out of range");
        if (in_a[i]) throw std::invalid_argument("duplicate index in partition");
        in_a[i] = 1;
    }
    const auto a_size = static_cast<int>(group_a.size());
    if (a_size == 0 || a_size == n)
        throw std::invalid_argument("partition groups must both be non-empty");

    CutFlow flow;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (in_a[i] && !in_a[j]) flow.a_to_b += graph(i, j);
            if (!in_a[i] && in_a[j]) flow.b_to_a += graph(i, j);
        }
    return flow;
}

std::optional<double> predict_consensus(const InfluenceGraph& graph, const BeliefConfig& b0,
                                        UpdateRule rule) {
    if (!is_regular(graph) || !is_weakly_connected(graph)) return std::nullopt;
    const bool applies = rule == UpdateRule::confirmation_bias ? is_reciprocal(graph)
                                                               : is_balanced(graph);
    if (!applies) return std::nullopt;
    return mean(b0);
}

StochasticMatrix StochasticMatrix::from_weights(int n, std::vector<double> weights) {
    if (n < 1 || weights.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("stochastic matrix must be n*n");
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double w = weights[static_cast<size_t>(i) * n + j];
            if (!(w >= 0.0 && w <= 1.0))
                throw std::invalid_argument("stochastic matrix entry outside [0,1]");
            row_sum += w;
        }
        if (std::abs(row_sum - 1.0) > kFlowTolerance)
            throw std::invalid_argument("stochastic matrix row does not sum to 1");
    }
    return StochasticMatrix(n, std::move(weights));
}

StochasticMatrix degroot_matrix(const InfluenceGraph& graph) {
    const int n = graph.agents();
    std::vector<double> t(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        int degree = 0;
        for (int j = 0; j < n; ++j)
            if (graph(j, i) > 0.0) ++degree;
        double off_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i || graph(j, i) <= 0.0) continue;
            const double w = graph(j, i) / degree;
            t[static_cast<size_t>(i) * n + j] = w;
            off_sum += w;
        }
        // Self-weight as the stochastic remainder; the j = i term is excluded
        // from the sum, which is the reading that makes rows sum to 1.
        t[static_cast<size_t>(i) * n + i] = 1.0 - off_sum;
    }
    return StochasticMatrix::from_weights(n, std::move(t));
}

BeliefConfig degroot_iterate(const StochasticMatrix& t_matrix, BeliefConfig f0, long t) {
    const int n = t_matrix.size();
    if (f0.size() != static_cast<size_t>(n))
        throw std::invalid_argument("vector length does not match matrix size");
    BeliefConfig cur = std::move(f0), next(n);
    for (long s = 0; s < t; ++s) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += t_matrix(i, j) * cur[j];
            next[i] = acc;
        }
        std::swap(cur, next);
    }
    return cur;
}

ConvergenceReport analyze_convergence(const Trace& trace, double epsilon,
                                      const Discretization& bins, double borderline_epsilon) {
    if (trace.configs.empty()) throw std::invalid_argument("empty trace");
    ConvergenceReport r;
    r.spread_final = spread(trace.configs.back());
    for (size_t k = 0; k < trace.configs.size(); ++k) {
        if (spread(trace.configs[k]) < epsilon) {
            r.converged = true;
            r.t_converged = trace.steps[k];
            break;
        }
    }
    if (r.converged) {
        r.consensus_value = mean(trace.configs.back());
        r.near_borderline =
            within_of_interior_boundary(*r.consensus_value, bins, borderline_epsilon);
    }
    return r;
}

PersistenceReport diagnose_persistence(const InfluenceGraph& graph, const BeliefConfig& b0,
                                       const Trace& trace, const Discretization& bins,
                                       double epsilon) {
    if (trace.configs.empty()) throw std::invalid_argument("empty trace");
    PersistenceReport r;
    r.polarization_final = trace.polarization.back();
    r.persistent = r.polarization_final > epsilon;
    r.imbalance = flow_imbalances(graph);
    r.not_balanced = std::any_of(r.imbalance.begin(), r.imbalance.end(),
                                 [](double d) { return std::abs(d) > kFlowTolerance; });
    r.not_weakly_connected = !is_weakly_connected(graph);
    r.radical_initial = is_radical(b0);
    const BeliefConfig& final_config = trace.configs.back();
    r.borderline_limit = spread(final_config) < epsilon &&
                         within_of_interior_boundary(mean(final_config), bins, epsilon);
    r.unexplained = r.persistent && !r.not_balanced && !r.not_weakly_connected &&
                    !r.radical_initial && !r.borderline_limit;
    return r;
}

}  // namespace polarsim
