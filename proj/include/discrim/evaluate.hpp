#pragma once

#include "discrim/types.hpp"

namespace discrim {

// Inner product <a|b>. States must share a dimension.
Complex overlap(const QuantumState& a, const QuantumState& b);

// Correct/error contributions of each basis element:
//   gains[i] = eta_i |<p_i|psi_i>|^2   (weight-1 correct contribution)
//   costs[i] = sum_{j!=i} eta_j |<p_i|psi_j>|^2   (weight-1 error contribution)
void contribution_split(const Ensemble& e, const std::vector<QuantumState>& basis,
                        std::vector<double>& gains, std::vector<double>& costs);

// Weighted projective rates:
//   P_C = sum_i w_i eta_i |<p_i|psi_i>|^2
//   P_E = sum_{i!=j} w_i eta_j |<p_i|psi_j>|^2
RatePoint evaluate_pvm(const Ensemble& e, const PvmStrategy& s);

// Generalized-measurement rates:
//   P_C = sum_i eta_i <psi_i|Pi_i|psi_i>,  P_E = sum_{i!=j} eta_j <psi_j|Pi_i|psi_j>
RatePoint evaluate_povm(const Ensemble& e, const PovmStrategy& s);

// Embeds a weighted PVM as the POVM with elements w_i |p_i><p_i| and
// inconclusive element sum_i (1-w_i) |p_i><p_i|. Rates are identical.
PovmStrategy povm_from_pvm(const PvmStrategy& s);

}  // namespace discrim
