#pragma once

#include <cstdint>
#include <vector>

#include "discrim/types.hpp"

namespace discrim {

struct PovmOptions {
    int restarts = 32;               // random factor starts in addition to structural candidates
    std::uint64_t seed = 0;
    double initial_penalty = 10.0;   // quadratic penalty multiplier of the first stage
    double penalty_growth = 10.0;    // multiplier growth per continuation stage
    int stages = 6;                  // baseline number of stages
    int max_stages = 14;             // continue past `stages` until the budget is met tightly
    int iterations_per_stage = 1500;
    double learning_rate = 0.04;     // first-stage Adam step size, decayed per stage
    double inner_tol = 1e-10;        // objective-change stopping threshold inside a stage
    std::vector<PovmStrategy> warm_starts;
    // Used by povm_tradeoff_curve only: one extra warm start per grid point,
    // aligned with the budget grid (e.g. an embedded projective curve).
    std::vector<PovmStrategy> paired_warm_starts;
    bool projective_warm_start = true;  // seed with the optimal projective strategy
    int projective_restarts = 8;
    bool parallel = true;
};

struct Feasibility {
    double min_eigenvalue = 0.0;        // smallest eigenvalue across all elements
    double completeness_residual = 0.0; // max | (sum_i Pi_i + Pi_0 - I)_{kl} |
};

struct PovmSolution {
    PovmStrategy strategy;
    RatePoint rates;
    double epsilon = 0.0;
    Feasibility feasibility;
    bool certified = true;
};

// Minimize P_In subject to P_E <= eps over POVMs, parametrized through
// square-root factors Pi_i = A_i^† A_i with Pi_0 = I - sum Pi_i. The budget
// and Pi_0 >= 0 are enforced by quadratic penalties on an increasing
// schedule; the returned strategy is projected to exact feasibility and
// re-evaluated, so reported rates are those of a valid POVM.
PovmSolution optimize_povm(const Ensemble& e, double eps, const PovmOptions& opts = {});

// Swept curve with neighbor warm starts, monotone post-processing and a
// convexification pass (mixtures of POVM strategies are POVM strategies).
TradeoffCurve povm_tradeoff_curve(const Ensemble& e, const std::vector<double>& eps_grid,
                                  const PovmOptions& opts = {});

struct ZlgCheck {
    double lhs = 0.0;   // P_In1 * P_In2
    double rhs = 0.0;   // |<psi1|psi2> - sqrt(P_C1 P_E2) - sqrt(P_C2 P_E1)|^2
    bool holds = false; // lhs >= rhs - 1e-9
};

// Two-state trade-off inequality on per-state conditional rates.
ZlgCheck zlg_inequality_check(const Ensemble& e, const PovmStrategy& s);

}  // namespace discrim
