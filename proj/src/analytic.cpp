#include "discrim/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "discrim/evaluate.hpp"

namespace discrim {

namespace {

void check_priors(double eta1, double eta2) {
    if (eta1 < 0.0 || eta2 < 0.0 || std::abs(eta1 + eta2 - 1.0) > 1e-9) {
        throw std::invalid_argument("priors must be non-negative and sum to 1");
    }
}

void check_fraction(double f, const char* name) {
    if (f < 0.0 || f > 1.0) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

}  // namespace

TwoStateGeometry::TwoStateGeometry(double theta_, double eta1_, double eta2_)
    : theta(theta_), eta1(eta1_), eta2(eta2_) {
    if (!(theta > 0.0) || theta > std::numbers::pi / 2 + 1e-12) {
        throw std::invalid_argument("TwoStateGeometry: theta must lie in (0, pi/2]");
    }
    check_priors(eta1, eta2);
    if (eta1 < eta2) {
        throw std::invalid_argument("TwoStateGeometry: convention requires eta1 >= eta2");
    }
}

double helstrom_bound(double eta1, double eta2, double s) {
    check_priors(eta1, eta2);
    if (s < 0.0 || s > 1.0) {
        throw std::invalid_argument("helstrom_bound: overlap magnitude must lie in [0,1]");
    }
    double disc = 1.0 - 4.0 * eta1 * eta2 * s * s;
    return 0.5 * (1.0 - std::sqrt(std::max(0.0, disc)));
}

QuantumState ud_direction(const Ensemble& e, int index) {
    int n = e.size();
    if (index < 0 || index >= n) {
        throw std::invalid_argument("ud_direction: state index out of range");
    }
    Matrix others(n, n - 1);
    int col = 0;
    for (int j = 0; j < n; ++j) {
        if (j == index) continue;
        others.col(col++) = e.state(j).amplitudes();
    }
    Eigen::JacobiSVD<Matrix> svd(others, Eigen::ComputeFullU);
    Vector v = svd.matrixU().col(n - 1);
    return QuantumState(std::move(v));
}

UdPvmResult ud_pvm_rate(const Ensemble& e) {
    int n = e.size();
    Matrix gram(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            gram(i, j) = overlap(e.state(i), e.state(j));
        }
    }
    double det = std::abs(gram.determinant());
    if (det <= 1e-12) {
        throw LinearDependenceError(
            "ud_pvm_rate: states are linearly dependent (Gram determinant " +
            std::to_string(det) + "), unambiguous discrimination impossible");
    }
    double best = -1.0;
    int best_index = 0;
    for (int i = 0; i < n; ++i) {
        QuantumState v = ud_direction(e, i);
        double rate = e.prior(i) * std::norm(overlap(v, e.state(i)));
        if (rate > best + 1e-15) {
            best = rate;
            best_index = i;
        }
    }
    return UdPvmResult{best, best_index, ud_direction(e, best_index)};
}

double ud_povm_rate_two_state(double eta1, double eta2, double s) {
    check_priors(eta1, eta2);
    if (s < 0.0 || s > 1.0) {
        throw std::invalid_argument("ud_povm_rate_two_state: overlap must lie in [0,1]");
    }
    double lo = std::min(eta1, eta2), hi = std::max(eta1, eta2);
    if (hi > 0.0 && std::sqrt(lo / hi) * s >= s * s) {
        return 1.0 - 2.0 * std::sqrt(eta1 * eta2) * s;
    }
    return hi * (1.0 - s * s);
}

std::pair<double, double> two_state_rates_from_angle(const TwoStateGeometry& g, double phi) {
    if (phi < -1e-12 || phi > std::numbers::pi / 2 - g.theta + 1e-12) {
        throw std::invalid_argument("two_state_rates_from_angle: phi must lie in [0, pi/2 - theta]");
    }
    double pc = g.eta1 * std::pow(std::sin(phi + g.theta), 2);
    double pe = g.eta2 * std::pow(std::sin(phi), 2);
    return {pc, pe};
}

double two_state_correct_curve(const TwoStateGeometry& g, double p_e) {
    double p_ud = g.eta1 * std::pow(std::sin(g.theta), 2);
    if (p_e < 0.0 || p_e > g.eta2 + 1e-12) {
        throw std::invalid_argument("two_state_correct_curve: p_e must lie in [0, eta2]");
    }
    if (p_e == 0.0) {
        return p_ud;
    }
    double ratio = g.eta2 / p_e - 1.0;
    return p_ud + (g.eta1 / g.eta2) * p_e *
                      (std::cos(2.0 * g.theta) + std::sqrt(std::max(0.0, ratio)) * std::sin(2.0 * g.theta));
}

RatePoint guess_transform_with_success(const RatePoint& r, double success_probability,
                                       double fraction) {
    validate(r);
    check_fraction(fraction, "fraction");
    check_fraction(success_probability, "success probability");
    RatePoint out;
    double guessed = fraction * r.inconclusive;
    out.error = r.error + guessed * (1.0 - success_probability);
    out.correct = r.correct + guessed * success_probability;
    out.inconclusive = (1.0 - fraction) * r.inconclusive;
    return out;
}

RatePoint guess_transform(const RatePoint& r, int n_states, double fraction) {
    if (n_states < 1) {
        throw std::invalid_argument("guess_transform: need at least one state");
    }
    return guess_transform_with_success(r, 1.0 / static_cast<double>(n_states), fraction);
}

RatePoint abstain_transform(const RatePoint& r, double fraction) {
    validate(r);
    check_fraction(fraction, "fraction");
    RatePoint out;
    out.error = (1.0 - fraction) * r.error;
    out.correct = (1.0 - fraction) * r.correct;
    out.inconclusive = 1.0 - (1.0 - fraction) * (r.error + r.correct);
    return out;
}

}  // namespace discrim
