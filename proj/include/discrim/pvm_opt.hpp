#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "discrim/orientation.hpp"
#include "discrim/types.hpp"

namespace discrim {

struct PvmOptions {
    int restarts = 32;          // local searches per solve (structural starts included)
    std::uint64_t seed = 0;     // master seed; restart k uses a seed derived from (seed, k)
    double tol = 1e-10;         // simplex convergence tolerance
    int max_iterations = 0;     // per local search, 0 -> auto
    Field field = Field::Complex;
    std::optional<std::vector<double>> fixed_weight_pattern;  // pin weights, search orientation only
    std::vector<PvmStrategy> warm_starts;
    bool parallel = true;       // run restarts concurrently (result is schedule independent)
};

struct PvmSolution {
    PvmStrategy strategy;
    RatePoint rates;
    double epsilon = 0.0;
    int restarts_used = 0;
    std::vector<double> objective_history;  // best P_In seen after each restart
    bool certified = true;
};

// Minimize P_In subject to P_E <= eps over the PVM orientation and the
// discrimination weights. The weights subproblem is solved exactly at every
// orientation; the orientation is searched by multi-start downhill simplex
// over generator parameters around structural starting bases.
PvmSolution optimize_pvm(const Ensemble& e, double eps, const PvmOptions& opts = {});

// Per-budget optimization swept in both grid directions with warm starting;
// the pointwise best is kept and post-processed so P_In is non-increasing.
TradeoffCurve pvm_tradeoff_curve(const Ensemble& e, const std::vector<double>& eps_grid,
                                 const PvmOptions& opts = {});

// Strategy family discriminating exactly m states (their weights pinned to 1).
struct CmFamily {
    int m = 0;
    std::vector<int> subset;  // indices of the discriminated states
    double min_error = 0.0;   // smallest achievable P_E within the family
};

// Minimum error over orientations and over all size-m subsets of
// discriminated states. Subsets are enumerated exhaustively (n <= 8).
CmFamily cm_min_error(const Ensemble& e, int m, const PvmOptions& opts = {});

}  // namespace discrim
