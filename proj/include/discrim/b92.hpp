#pragma once

#include <utility>
#include <vector>

#include "discrim/types.hpp"

namespace discrim {

struct KeyRateInput {
    double n_sifted = 0.0;       // same-basis sent states, N
    double f_inconclusive = 0.0; // receiver's inconclusive rate in [0,1]
    double e_bit = 0.0;          // bit-error fraction in [0, 1/2]
    double e_phase = 0.0;        // phase-error fraction in [0, 1/2]
};

// Shannon binary entropy in bits, with H(0) = H(1) = 0.
double binary_entropy(double x);

// R = max(0, N (1 - f_In) (1 - H(e_b) - H(e_p)))
double b92_key_rate(const KeyRateInput& k);

struct B92SweepPoint {
    double epsilon = 0.0;
    double inconclusive = 0.0;
    double rate = 0.0;
};

struct B92Sweep {
    std::vector<B92SweepPoint> points;
    int best_index = 0;  // argmax of rate, first on ties
};

// Substitutes each curve point's P_In for f_In and reports the budget with
// the highest key rate.
B92Sweep b92_rate_vs_error(double n_sifted, double e_bit, double e_phase,
                           const TradeoffCurve& curve);
B92Sweep b92_rate_vs_error(double n_sifted, double e_bit, double e_phase,
                           const std::vector<std::pair<double, double>>& eps_inconclusive);

}  // namespace discrim
