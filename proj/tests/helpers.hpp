#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "polarsim/core.hpp"

namespace testutil {

// Deterministic, platform-stable RNG (splitmix64). Values are derived from
// raw bits rather than <random> distributions so frozen expectations cannot
// drift across standard libraries.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive
    bool chance(double p) { return uniform() < p; }
};

// Valid random graph: diagonal 1, each off-diagonal edge present with
// probability p, weights in [lo,hi].
inline polarsim::InfluenceGraph random_graph(Rng& rng, int n, double p, double lo = 0.05,
                                             double hi = 0.95) {
    polarsim::InfluenceGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.chance(p)) g.set(i, j, rng.uniform(lo, hi));
    return g;
}

inline polarsim::BeliefConfig random_beliefs(Rng& rng, int n) {
    polarsim::BeliefConfig b(n);
    for (double& v : b) v = rng.uniform();
    return b;
}

// Balanced-by-construction graph: a superposition of directed cycles with
// weight multiples of 1/16, so flow sums are exact in binary64.
inline polarsim::InfluenceGraph random_circulation(Rng& rng, int n, int cycles) {
    polarsim::InfluenceGraph g(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int c = 0; c < cycles; ++c) {
        for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        const int len = rng.range(2, n);
        const double w = rng.range(1, 4) / 16.0;
        bool fits = true;
        for (int k = 0; k < len; ++k) {
            const int u = order[k], v = order[(k + 1) % len];
            if (g(u, v) + w > 1.0) fits = false;
        }
        if (!fits) continue;  // skip the whole cycle to preserve balance
        for (int k = 0; k < len; ++k) {
            const int u = order[k], v = order[(k + 1) % len];
            g.set(u, v, g(u, v) + w);
        }
    }
    return g;
}

inline double spread_of(const polarsim::BeliefConfig& b) {
    double lo = b[0], hi = b[0];
    for (double v : b) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    return hi - lo;
}

}  // namespace testutil
