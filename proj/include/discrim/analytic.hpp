#pragma once

#include <stdexcept>
#include <utility>

#include "discrim/types.hpp"

namespace discrim {

// Thrown when a request requires linearly independent states and the
// ensemble's Gram determinant is (numerically) zero.
class LinearDependenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Real two-state geometry: separation angle theta in (0, pi/2], priors with
// eta1 >= eta2.
struct TwoStateGeometry {
    TwoStateGeometry(double theta, double eta1, double eta2);
    double theta;
    double eta1;
    double eta2;
};

// Minimum-error rate for two states with overlap magnitude s:
//   P_ME = (1 - sqrt(1 - 4 eta1 eta2 s^2)) / 2
double helstrom_bound(double eta1, double eta2, double s);

struct UdPvmResult {
    double rate;          // best conclusive rate max_i eta_i |<v_i|psi_i>|^2
    int state_index;      // argmax (ties broken by lowest index)
    QuantumState direction;  // the discriminating unit vector v for that state
};

// Best projective unambiguous-discrimination rate: for each i, v_i is the
// unit vector orthogonal to all other input states. Requires linear
// independence.
UdPvmResult ud_pvm_rate(const Ensemble& e);

// Unit vector orthogonal to span{psi_j : j != exclude}; the direction that
// unambiguously identifies state `exclude`.
QuantumState ud_direction(const Ensemble& e, int index);

// Optimal two-state unambiguous conclusive rate. Returns the generalized
// value 1 - 2 sqrt(eta1 eta2) s when sqrt(eta2/eta1) s >= s^2, otherwise the
// projective value eta1 (1 - s^2).
double ud_povm_rate_two_state(double eta1, double eta2, double s);

// (P_C, P_E) of the rotated zero-weight strategy:
//   P_C = eta1 sin^2(phi + theta), P_E = eta2 sin^2(phi), phi in [0, pi/2-theta]
std::pair<double, double> two_state_rates_from_angle(const TwoStateGeometry& g, double phi);

// Correct rate of the same family as a function of the error rate,
//   P_C = P_UD + (eta1/eta2) P_E (cos 2theta + sqrt(eta2/P_E - 1) sin 2theta)
// with the exact limit P_UD at P_E = 0. Requires p_e in [0, eta2].
double two_state_correct_curve(const TwoStateGeometry& g, double p_e);

// Randomly guess on a fraction of inconclusive outcomes, equal priors:
// a correct guess happens with probability 1/n.
RatePoint guess_transform(const RatePoint& r, int n_states, double fraction);

// Guessing with an explicit per-guess success probability (e.g. max_i eta_i
// when always guessing the most likely state).
RatePoint guess_transform_with_success(const RatePoint& r, double success_probability,
                                       double fraction);

// Randomly call inconclusive a fraction of all interpreted outcomes.
RatePoint abstain_transform(const RatePoint& r, double fraction);

}  // namespace discrim
