#include "discrim/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace discrim {

namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kOrthoTolerance = 1e-9;
constexpr double kSumTolerance = 1e-9;
constexpr double kHermTolerance = 1e-9;
constexpr double kEigTolerance = 1e-8;
constexpr double kCompletenessTolerance = 1e-8;

}  // namespace

QuantumState::QuantumState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("QuantumState: amplitude list is empty");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("QuantumState: norm " + std::to_string(norm) +
                                    " deviates from 1 by more than 1e-6");
    }
    amplitudes_ /= norm;
}

QuantumState::QuantumState(std::initializer_list<Complex> amplitudes)
    : QuantumState(Eigen::Map<const Vector>(std::data(amplitudes),
                                            static_cast<Eigen::Index>(amplitudes.size()))) {}

Ensemble::Ensemble(std::vector<QuantumState> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.empty()) {
        throw std::invalid_argument("Ensemble: no states given");
    }
    int dim = states_.front().dimension();
    for (const auto& s : states_) {
        if (s.dimension() != dim) {
            throw std::invalid_argument("Ensemble: states have mixed dimensions");
        }
    }
    if (static_cast<int>(states_.size()) != dim) {
        throw std::invalid_argument("Ensemble: number of states (" +
                                    std::to_string(states_.size()) +
                                    ") must equal the dimension (" + std::to_string(dim) + ")");
    }
    if (priors_.size() != states_.size()) {
        throw std::invalid_argument("Ensemble: number of priors must equal number of states");
    }
    double sum = 0.0;
    for (double p : priors_) {
        if (p < 0.0) {
            throw std::invalid_argument("Ensemble: priors must be non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw std::invalid_argument("Ensemble: priors sum to " + std::to_string(sum) +
                                    ", expected 1 within 1e-9");
    }
}

Ensemble Ensemble::with_equal_priors(std::vector<QuantumState> states) {
    std::vector<double> priors(states.size(), 1.0 / static_cast<double>(states.size()));
    return Ensemble(std::move(states), std::move(priors));
}

RatePoint make_rate_point(double correct, double error) {
    RatePoint r;
    if (correct < -kSumTolerance || correct > 1.0 + kSumTolerance) {
        throw std::invalid_argument("RatePoint: correct rate outside [0,1]");
    }
    if (error < -kSumTolerance || error > 1.0 + kSumTolerance) {
        throw std::invalid_argument("RatePoint: error rate outside [0,1]");
    }
    r.correct = std::min(1.0, std::max(0.0, correct));
    r.error = std::min(1.0, std::max(0.0, error));
    r.inconclusive = 1.0 - r.correct - r.error;
    if (r.inconclusive < -kSumTolerance) {
        throw std::invalid_argument("RatePoint: correct + error exceeds 1");
    }
    r.inconclusive = std::min(1.0, std::max(0.0, r.inconclusive));
    return r;
}

void validate(const RatePoint& r) {
    auto in_range = [](double x) { return x >= -kSumTolerance && x <= 1.0 + kSumTolerance; };
    if (!in_range(r.error) || !in_range(r.inconclusive) || !in_range(r.correct)) {
        throw std::invalid_argument("RatePoint: rate outside [0,1]");
    }
    if (std::abs(r.error + r.inconclusive + r.correct - 1.0) > kSumTolerance) {
        throw std::invalid_argument("RatePoint: rates do not sum to 1 within 1e-9");
    }
}

PvmStrategy::PvmStrategy(std::vector<QuantumState> basis, std::vector<double> weights)
    : basis_(std::move(basis)), weights_(std::move(weights)) {
    if (basis_.empty()) {
        throw std::invalid_argument("PvmStrategy: empty basis");
    }
    int dim = basis_.front().dimension();
    for (const auto& v : basis_) {
        if (v.dimension() != dim) {
            throw std::invalid_argument("PvmStrategy: basis vectors have mixed dimensions");
        }
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = i + 1; j < basis_.size(); ++j) {
            Complex ip = basis_[i].amplitudes().dot(basis_[j].amplitudes());
            if (std::abs(ip) > kOrthoTolerance) {
                throw std::invalid_argument("PvmStrategy: basis vectors " + std::to_string(i) +
                                            " and " + std::to_string(j) +
                                            " are not orthogonal within 1e-9");
            }
        }
    }
    if (weights_.size() != basis_.size()) {
        throw std::invalid_argument("PvmStrategy: weight count must equal basis size");
    }
    for (double w : weights_) {
        if (w < 0.0 || w > 1.0) {
            throw std::invalid_argument("PvmStrategy: weight outside [0,1]");
        }
    }
}

PovmStrategy::PovmStrategy(std::vector<Matrix> elements, Matrix inconclusive_element)
    : elements_(std::move(elements)), inconclusive_element_(std::move(inconclusive_element)) {
    if (elements_.empty()) {
        throw std::invalid_argument("PovmStrategy: no elements");
    }
    Eigen::Index dim = inconclusive_element_.rows();
    Matrix sum = inconclusive_element_;
    auto check = [&](const Matrix& m, const std::string& name) {
        if (m.rows() != dim || m.cols() != dim) {
            throw std::invalid_argument("PovmStrategy: " + name + " has wrong shape");
        }
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTolerance) {
            throw std::invalid_argument("PovmStrategy: " + name + " is not Hermitian within 1e-9");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kEigTolerance) {
            throw std::invalid_argument("PovmStrategy: " + name +
                                        " has eigenvalue below -1e-8 (not PSD)");
        }
    };
    check(inconclusive_element_, "inconclusive element");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        check(elements_[i], "element " + std::to_string(i));
        sum += elements_[i];
    }
    sum -= Matrix::Identity(dim, dim);
    if (sum.cwiseAbs().maxCoeff() > kCompletenessTolerance) {
        throw std::invalid_argument(
            "PovmStrategy: elements do not sum to identity within 1e-8 (completeness)");
    }
}

void validate(const TradeoffCurve& curve) {
    for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
        if (!(curve.points[k].epsilon < curve.points[k + 1].epsilon)) {
            throw std::invalid_argument("TradeoffCurve: epsilons must be strictly increasing");
        }
        if (curve.points[k + 1].rates.inconclusive >
            curve.points[k].rates.inconclusive + kSumTolerance) {
            throw std::invalid_argument("TradeoffCurve: inconclusive rate must be non-increasing");
        }
    }
    for (const auto& p : curve.points) {
        validate(p.rates);
    }
}

}  // namespace discrim
