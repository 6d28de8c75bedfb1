#pragma once

#include <complex>
#include <initializer_list>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace discrim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// A pure state: unit-norm complex amplitude vector. Inputs whose norm
// deviates from 1 by more than 1e-6 are rejected; smaller deviations are
// renormalized so the stored vector has unit norm to machine precision.
class QuantumState {
public:
    explicit QuantumState(Vector amplitudes);
    QuantumState(std::initializer_list<Complex> amplitudes);

    int dimension() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(int i) const { return amplitudes_(i); }

private:
    Vector amplitudes_;
};

// A discrimination problem instance: n states of dimension n with priors.
class Ensemble {
public:
    Ensemble(std::vector<QuantumState> states, std::vector<double> priors);

    // Equal priors 1/n.
    static Ensemble with_equal_priors(std::vector<QuantumState> states);

    int size() const { return static_cast<int>(states_.size()); }
    int dimension() const { return states_.front().dimension(); }
    const QuantumState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    double prior(int i) const { return priors_[static_cast<std::size_t>(i)]; }
    const std::vector<QuantumState>& states() const { return states_; }
    const std::vector<double>& priors() const { return priors_; }

private:
    std::vector<QuantumState> states_;
    std::vector<double> priors_;
};

// Response-category probabilities. Always sums to 1.
struct RatePoint {
    double error = 0.0;
    double inconclusive = 1.0;
    double correct = 0.0;
};

// Builds the point (correct, error, 1 - correct - error), validating ranges.
RatePoint make_rate_point(double correct, double error);
void validate(const RatePoint& r);

// Orthonormal basis plus per-element discrimination weights. Outcome i is
// interpreted as state i with probability weights[i], inconclusive otherwise.
class PvmStrategy {
public:
    PvmStrategy(std::vector<QuantumState> basis, std::vector<double> weights);

    int size() const { return static_cast<int>(basis_.size()); }
    int dimension() const { return basis_.front().dimension(); }
    const std::vector<QuantumState>& basis() const { return basis_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<QuantumState> basis_;
    std::vector<double> weights_;
};

// Generalized measurement: n discrimination operators plus the inconclusive
// operator, all positive semidefinite, summing to the identity.
class PovmStrategy {
public:
    PovmStrategy(std::vector<Matrix> elements, Matrix inconclusive_element);

    int size() const { return static_cast<int>(elements_.size()); }
    int dimension() const { return static_cast<int>(inconclusive_element_.rows()); }
    const std::vector<Matrix>& elements() const { return elements_; }
    const Matrix& inconclusive_element() const { return inconclusive_element_; }

private:
    std::vector<Matrix> elements_;
    Matrix inconclusive_element_;
};

using Strategy = std::variant<PvmStrategy, PovmStrategy>;

struct TradeoffPoint {
    double epsilon = 0.0;
    RatePoint rates;
    Strategy strategy;
    bool certified = true;
};

struct TradeoffCurve {
    std::vector<TradeoffPoint> points;
};

// Checks epsilons strictly increasing and inconclusive non-increasing.
void validate(const TradeoffCurve& curve);

}  // namespace discrim
