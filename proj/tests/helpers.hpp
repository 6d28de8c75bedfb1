#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "discrim/types.hpp"

namespace testutil {

using discrim::Complex;
using discrim::Ensemble;
using discrim::Matrix;
using discrim::PovmStrategy;
using discrim::PvmStrategy;
using discrim::QuantumState;
using discrim::Vector;

inline constexpr double kPi = std::numbers::pi;

// Two real states separated by theta: psi1 = (1,0), psi2 = (cos t, sin t).
inline Ensemble two_state_ensemble(double theta = kPi / 4, double eta1 = 0.5) {
    std::vector<QuantumState> states;
    states.push_back(QuantumState{Complex(1.0), Complex(0.0)});
    states.push_back(QuantumState{Complex(std::cos(theta)), Complex(std::sin(theta))});
    return Ensemble(std::move(states), {eta1, 1.0 - eta1});
}

// The three-state triplet (a,0,b), (0,b,a), (0,-b,a) with a=sqrt(2/3),
// b=sqrt(1/3), equal priors.
inline Ensemble three_state_ensemble() {
    double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 3.0);
    std::vector<QuantumState> states;
    states.push_back(QuantumState{Complex(a), Complex(0.0), Complex(b)});
    states.push_back(QuantumState{Complex(0.0), Complex(b), Complex(a)});
    states.push_back(QuantumState{Complex(0.0), Complex(-b), Complex(a)});
    return Ensemble::with_equal_priors(std::move(states));
}

inline std::array<double, 3> cross(const std::array<double, 3>& x,
                                   const std::array<double, 3>& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

inline std::array<double, 3> normalized(std::array<double, 3> v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

inline QuantumState state3(const std::array<double, 3>& v) {
    return QuantumState{Complex(v[0]), Complex(v[1]), Complex(v[2])};
}

inline std::array<double, 3> real3(const QuantumState& s) {
    return {s.amplitude(0).real(), s.amplitude(1).real(), s.amplitude(2).real()};
}

// Two-projector construction on the triplet: q2 is orthogonal to psi1 and
// psi3 (identifies psi2 without error), q3 = q2 x psi1 (identifies psi3 with
// a small error from psi2), q1 completes the basis. Returned in index-paired
// order (q1, q2, q3) for weights (0, 1, 1).
inline std::vector<QuantumState> c2_basis(const Ensemble& three) {
    auto psi1 = real3(three.state(0));
    auto psi3 = real3(three.state(2));
    auto q2 = normalized(cross(psi1, psi3));
    auto q3 = normalized(cross(q2, psi1));
    auto q1 = normalized(cross(q2, q3));
    return {state3(q1), state3(q2), state3(q3)};
}

// Minimum-error basis for two equally likely states at separation theta:
// vectors at angles theta/2 -/+ pi/4, paired with psi1 and psi2.
inline std::vector<QuantumState> helstrom_basis(double theta) {
    double mid = theta / 2.0;
    auto at = [](double ang) {
        return QuantumState{Complex(std::cos(ang)), Complex(std::sin(ang))};
    };
    return {at(mid - kPi / 4), at(mid + kPi / 4)};
}

// Generalized unambiguous measurement for the two-state ensemble:
// Pi_i = (1/(1+s)) |psi_j_perp><psi_j_perp| for j != i.
inline PovmStrategy idp_povm(double theta) {
    double s = std::cos(theta);
    Vector psi2_perp(2), psi1_perp(2);
    psi2_perp << Complex(std::sin(theta)), Complex(-std::cos(theta));
    psi1_perp << Complex(0.0), Complex(1.0);
    double a = 1.0 / (1.0 + s);
    Matrix pi1 = a * (psi2_perp * psi2_perp.adjoint());
    Matrix pi2 = a * (psi1_perp * psi1_perp.adjoint());
    Matrix pi0 = Matrix::Identity(2, 2) - pi1 - pi2;
    return PovmStrategy({pi1, pi2}, pi0);
}

// Independent evaluation of the weighted projective rates by direct
// arithmetic on the defining sums; used as the oracle for evaluate_pvm.
inline std::pair<double, double> oracle_pvm_rates(const Ensemble& e,
                                                  const std::vector<QuantumState>& basis,
                                                  const std::vector<double>& weights) {
    int n = e.size();
    double pc = 0.0, pe = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex ip(0.0, 0.0);
            for (int k = 0; k < n; ++k) {
                ip += std::conj(basis[static_cast<std::size_t>(i)].amplitude(k)) *
                      e.state(j).amplitude(k);
            }
            double term = weights[static_cast<std::size_t>(i)] * e.prior(j) * std::norm(ip);
            if (i == j) {
                pc += term;
            } else {
                pe += term;
            }
        }
    }
    return {pc, pe};
}

// Exhaustive LP oracle: every {0,1} assignment plus one fractional
// coordinate saturating the budget.
inline double lp_enumerate(const std::vector<double>& gains, const std::vector<double>& costs,
                           double budget) {
    std::size_t n = gains.size();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        double cost = 0.0, value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                cost += costs[i];
                value += gains[i] + costs[i];
            }
        }
        if (cost > budget + 1e-12) continue;
        if (value > best) best = value;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            if (costs[j] <= 0.0) {
                if (value + gains[j] > best) best = value + gains[j];
                continue;
            }
            double take = std::min(1.0, (budget - cost) / costs[j]);
            double v = value + take * (gains[j] + costs[j]);
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace testutil
