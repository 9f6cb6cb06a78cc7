#pragma once

#include "polarsim/core.hpp"

namespace polarsim {

/// Discrete opinion distribution: weights[m] is the fraction of agents in
/// the m-th occupied bin (strictly positive, summing to 1), positions[m]
/// that bin's mid-point. Empty bins are not represented.
struct BinDistribution {
    std::vector<double> weights;
    std::vector<double> positions;
};

/// Bin containing belief b under the right-open / last-closed convention.
inline int bin_index(double b, const Discretization& d) { return d.bin_index(b); }

/// Pools agents into bins and drops the empty ones.
BinDistribution to_distribution(const BeliefConfig& beliefs, const Discretization& d);

/// Esteban-Ray measure  K * sum_ij w_i^(1+alpha) * w_j * |y_i - y_j|.
/// Zero exactly when all mass sits at a single position.
/// Throws std::invalid_argument unless K > 0 and alpha > 0.
double esteban_ray(const BinDistribution& dist, double K, double alpha);

/// Polarization of a belief configuration: esteban_ray over its binning.
double polarization(const BeliefConfig& beliefs, const Discretization& d, double K,
                    double alpha);

}  // namespace polarsim
