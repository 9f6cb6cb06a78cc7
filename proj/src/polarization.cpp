#include "polarsim/polarization.hpp"

#include <cmath>
#include <stdexcept>

namespace polarsim {

BinDistribution to_distribution(const BeliefConfig& beliefs, const Discretization& d) {
    std::vector<int> counts(d.bins(), 0);
    for (double b : beliefs) ++counts[d.bin_index(b)];

    BinDistribution dist;
    const double n = static_cast<double>(beliefs.size());
    for (int m = 0; m < d.bins(); ++m) {
        if (counts[m] == 0) continue;
        dist.weights.push_back(counts[m] / n);
        dist.positions.push_back(d.midpoint(m));
    }
    return dist;
}

double esteban_ray(const BinDistribution& dist, double K, double alpha) {
    if (!(K > 0.0)) throw std::invalid_argument("K must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (dist.weights.size() != dist.positions.size() || dist.weights.empty())
        throw std::invalid_argument("malformed distribution");

    const size_t k = dist.weights.size();
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const double wi = std::pow(dist.weights[i], 1.0 + alpha);
        for (size_t j = 0; j < k; ++j)
            sum += wi * dist.weights[j] * std::abs(dist.positions[i] - dist.positions[j]);
    }
    return K * sum;
}

double polarization(const BeliefConfig& beliefs, const Discretization& d, double K,
                    double alpha) {
    return esteban_ray(to_distribution(beliefs, d), K, alpha);
}

}  // namespace polarsim
