#include "discrim/evaluate.hpp"

#include <stdexcept>

namespace discrim {

Complex overlap(const QuantumState& a, const QuantumState& b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("overlap: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

void contribution_split(const Ensemble& e, const std::vector<QuantumState>& basis,
                        std::vector<double>& gains, std::vector<double>& costs) {
    int n = e.size();
    if (static_cast<int>(basis.size()) != n) {
        throw std::invalid_argument("contribution_split: basis size must equal state count");
    }
    gains.assign(static_cast<std::size_t>(n), 0.0);
    costs.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double p = e.prior(j) * std::norm(overlap(basis[static_cast<std::size_t>(i)], e.state(j)));
            if (j == i) {
                gains[static_cast<std::size_t>(i)] = p;
            } else {
                costs[static_cast<std::size_t>(i)] += p;
            }
        }
    }
}

RatePoint evaluate_pvm(const Ensemble& e, const PvmStrategy& s) {
    if (s.dimension() != e.dimension()) {
        throw std::invalid_argument("evaluate_pvm: strategy dimension does not match ensemble");
    }
    if (s.size() != e.size()) {
        throw std::invalid_argument("evaluate_pvm: basis size does not match state count");
    }
    std::vector<double> gains, costs;
    contribution_split(e, s.basis(), gains, costs);
    double correct = 0.0, error = 0.0;
    for (int i = 0; i < e.size(); ++i) {
        correct += s.weights()[static_cast<std::size_t>(i)] * gains[static_cast<std::size_t>(i)];
        error += s.weights()[static_cast<std::size_t>(i)] * costs[static_cast<std::size_t>(i)];
    }
    return make_rate_point(correct, error);
}

RatePoint evaluate_povm(const Ensemble& e, const PovmStrategy& s) {
    if (s.dimension() != e.dimension()) {
        throw std::invalid_argument("evaluate_povm: strategy dimension does not match ensemble");
    }
    if (s.size() != e.size()) {
        throw std::invalid_argument("evaluate_povm: element count does not match state count");
    }
    double correct = 0.0, error = 0.0;
    for (int i = 0; i < e.size(); ++i) {
        const Matrix& pi = s.elements()[static_cast<std::size_t>(i)];
        for (int j = 0; j < e.size(); ++j) {
            const Vector& psi = e.state(j).amplitudes();
            double p = e.prior(j) * std::real(psi.dot(pi * psi));
            if (j == i) {
                correct += p;
            } else {
                error += p;
            }
        }
    }
    return make_rate_point(correct, error);
}

PovmStrategy povm_from_pvm(const PvmStrategy& s) {
    int dim = s.dimension();
    std::vector<Matrix> elements;
    elements.reserve(static_cast<std::size_t>(s.size()));
    Matrix inconclusive = Matrix::Zero(dim, dim);
    for (int i = 0; i < s.size(); ++i) {
        const Vector& p = s.basis()[static_cast<std::size_t>(i)].amplitudes();
        Matrix proj = p * p.adjoint();
        double w = s.weights()[static_cast<std::size_t>(i)];
        elements.push_back(w * proj);
        inconclusive += (1.0 - w) * proj;
    }
    return PovmStrategy(std::move(elements), std::move(inconclusive));
}

}  // namespace discrim
