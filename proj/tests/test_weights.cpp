#include <doctest.h>

#include <cmath>

#include "discrim/analytic.hpp"
#include "discrim/evaluate.hpp"
#include "discrim/rng.hpp"
#include "discrim/weights.hpp"
#include "helpers.hpp"

using namespace discrim;
using namespace testutil;

TEST_CASE("zero budget admits only zero-error items") {
    Ensemble e = two_state_ensemble();
    // p1 orthogonal to psi2 discriminates psi1 without error
    std::vector<QuantumState> basis = {
        QuantumState{Complex(std::sin(kPi / 4)), Complex(-std::cos(kPi / 4))},
        QuantumState{Complex(std::cos(kPi / 4)), Complex(std::sin(kPi / 4))}};
    auto [weights, rates] = optimal_weights_for_basis(e, basis, 0.0);
    CHECK(weights[0] == doctest::Approx(1.0));
    CHECK(weights[1] == doctest::Approx(0.0));
    CHECK(rates.correct == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("triplet construction budget splits as expected") {
    Ensemble e = three_state_ensemble();
    auto basis = c2_basis(e);
    auto [weights, rates] = optimal_weights_for_basis(e, basis, 0.0025);
    // listed in paired order (completion, zero-error projector, paid projector)
    CHECK(weights[1] == doctest::Approx(1.0));
    CHECK(weights[2] == doctest::Approx(0.0025 * 189.0).epsilon(1e-6));  // eps / (1/189)
    CHECK(weights[0] == doctest::Approx(0.0));
    CHECK(rates.correct == doctest::Approx(0.376468).epsilon(1e-4));
    CHECK(rates.correct == doctest::Approx(0.3765).epsilon(1e-3));
    CHECK(rates.error == doctest::Approx(0.0025).epsilon(1e-9));
}

TEST_CASE("greedy equals exhaustive vertex enumeration on random instances") {
    SplitMix64 rng(20260809);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 2 + static_cast<int>(rng.next() % 5);  // up to 6
        std::vector<double> gains, costs;
        double total_cost = 0.0;
        for (int i = 0; i < n; ++i) {
            gains.push_back(rng.uniform() < 0.15 ? 0.0 : rng.uniform() * 0.4);
            double c = rng.uniform() < 0.2 ? 0.0 : rng.uniform() * 0.25;
            costs.push_back(c);
            total_cost += c;
        }
        double budget = rng.uniform() * total_cost * 1.2;
        WeightAllocation alloc = optimal_weights(gains, costs, budget);
        double greedy_value = alloc.correct + alloc.error;
        double oracle = lp_enumerate(gains, costs, budget);
        CHECK(greedy_value == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(alloc.error <= budget + 1e-12 + 6e-15);
        for (double w : alloc.weights) {
            CHECK(w >= 0.0);
            CHECK(w <= 1.0);
        }
    }
}

TEST_CASE("slack is left when the budget exceeds every error source") {
    std::vector<double> gains = {0.3, 0.2};
    std::vector<double> costs = {0.05, 0.1};
    WeightAllocation alloc = optimal_weights(gains, costs, 10.0);
    CHECK(alloc.weights[0] == doctest::Approx(1.0));
    CHECK(alloc.weights[1] == doctest::Approx(1.0));
    CHECK(alloc.error == doctest::Approx(0.15));
}

TEST_CASE("reducing one weight traces a straight line of known slope") {
    Ensemble e = three_state_ensemble();
    auto basis = c2_basis(e);
    std::vector<double> gains, costs;
    contribution_split(e, basis, gains, costs);
    const int idx = 2;  // the error-prone discriminated element
    RatePoint base = evaluate_pvm(e, PvmStrategy(basis, {0.0, 1.0, 1.0}));
    double slope_expected = -(gains[idx] + costs[idx]) / costs[idx];
    for (double w : {0.8, 0.6, 0.4, 0.2, 0.0}) {
        RatePoint r = evaluate_pvm(e, PvmStrategy(basis, {0.0, 1.0, w}));
        double slope = (r.inconclusive - base.inconclusive) / (r.error - base.error);
        CHECK(slope == doctest::Approx(slope_expected).epsilon(1e-9));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(optimal_weights(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_weights(std::vector<double>{1.0}, std::vector<double>{1.0}, -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_weights(std::vector<double>{-1.0}, std::vector<double>{1.0}, 0.1),
                    std::invalid_argument);
}
