#pragma once

#include <span>
#include <utility>
#include <vector>

#include "discrim/types.hpp"

namespace discrim {

struct WeightAllocation {
    std::vector<double> weights;
    double correct = 0.0;  // sum w_i gains_i
    double error = 0.0;    // sum w_i costs_i
};

// Exact solution of
//   maximize   sum_i w_i (gains_i + costs_i)
//   subject to sum_i w_i costs_i <= budget,  0 <= w_i <= 1
// by fractional-knapsack greedy: items with costs_i <= 1e-15 take weight 1
// when gains_i > 0; the rest are filled in decreasing gains_i/costs_i order,
// with at most one fractional weight.
WeightAllocation optimal_weights(std::span<const double> gains, std::span<const double> costs,
                                 double budget);

// LP-optimal discrimination weights for a fixed orthonormal basis at error
// budget eps, with the resulting rates.
std::pair<std::vector<double>, RatePoint> optimal_weights_for_basis(
    const Ensemble& e, const std::vector<QuantumState>& basis, double eps);

}  // namespace discrim
