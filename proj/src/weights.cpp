#include "discrim/weights.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "discrim/evaluate.hpp"

namespace discrim {

namespace {
constexpr double kZeroCost = 1e-15;
}

WeightAllocation optimal_weights(std::span<const double> gains, std::span<const double> costs,
                                 double budget) {
    if (gains.size() != costs.size()) {
        throw std::invalid_argument("optimal_weights: gains and costs differ in length");
    }
    if (budget < 0.0) {
        throw std::invalid_argument("optimal_weights: budget must be non-negative");
    }
    std::size_t n = gains.size();
    WeightAllocation out;
    out.weights.assign(n, 0.0);

    std::vector<std::size_t> paid;
    for (std::size_t i = 0; i < n; ++i) {
        if (costs[i] < 0.0 || gains[i] < 0.0) {
            throw std::invalid_argument("optimal_weights: contributions must be non-negative");
        }
        if (costs[i] <= kZeroCost) {
            if (gains[i] > 0.0) out.weights[i] = 1.0;
        } else {
            paid.push_back(i);
        }
    }
    std::sort(paid.begin(), paid.end(), [&](std::size_t a, std::size_t b) {
        double ra = gains[a] / costs[a], rb = gains[b] / costs[b];
        if (ra != rb) return ra > rb;
        return a < b;
    });
    double remaining = budget;
    for (std::size_t i : paid) {
        if (remaining <= 0.0) break;
        double take = std::min(1.0, remaining / costs[i]);
        out.weights[i] = take;
        remaining -= take * costs[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.correct += out.weights[i] * gains[i];
        out.error += out.weights[i] * costs[i];
    }
    return out;
}

std::pair<std::vector<double>, RatePoint> optimal_weights_for_basis(
    const Ensemble& e, const std::vector<QuantumState>& basis, double eps) {
    if (eps < 0.0) {
        throw std::invalid_argument("optimal_weights_for_basis: eps must be non-negative");
    }
    std::vector<double> gains, costs;
    contribution_split(e, basis, gains, costs);
    WeightAllocation alloc = optimal_weights(gains, costs, eps);
    RatePoint rates = make_rate_point(alloc.correct, alloc.error);
    return {std::move(alloc.weights), rates};
}

}  // namespace discrim
