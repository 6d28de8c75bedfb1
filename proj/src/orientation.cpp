#include "discrim/orientation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discrim {

int parameter_count(int dim, Field field) {
    return field == Field::Real ? dim * (dim - 1) / 2 : dim * (dim - 1);
}

Matrix generator_from_parameters(std::span<const double> params, int dim, Field field) {
    if (static_cast<int>(params.size()) != parameter_count(dim, field)) {
        throw std::invalid_argument("generator_from_parameters: expected " +
                                    std::to_string(parameter_count(dim, field)) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    Matrix g = Matrix::Zero(dim, dim);
    std::size_t k = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            Complex entry;
            if (field == Field::Real) {
                entry = Complex(params[k], 0.0);
                k += 1;
            } else {
                entry = Complex(params[k], params[k + 1]);
                k += 2;
            }
            g(i, j) = entry;
            g(j, i) = -std::conj(entry);
        }
    }
    return g;
}

Matrix unitary_from_generator(const Matrix& generator) {
    // G skew-Hermitian: -iG is Hermitian, exp(G) = V diag(e^{i lambda}) V^†.
    Matrix h = Complex(0.0, -1.0) * generator;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        phases(k) = std::polar(1.0, es.eigenvalues()(k));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<QuantumState> basis_from_parameters(std::span<const double> params, int dim,
                                                Field field) {
    Matrix u = unitary_from_generator(generator_from_parameters(params, dim, field));
    std::vector<QuantumState> basis;
    basis.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        basis.emplace_back(u.col(i).eval());
    }
    return basis;
}

Matrix random_unitary(int dim, SplitMix64& rng) {
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(dim, dim);
}

Matrix complete_basis(const Matrix& columns) {
    Eigen::Index dim = columns.rows();
    Matrix out(dim, dim);
    Eigen::Index filled = columns.cols();
    out.leftCols(filled) = columns;
    for (Eigen::Index c = 0; c < dim && filled < dim; ++c) {
        Vector v = Vector::Zero(dim);
        v(c) = 1.0;
        for (Eigen::Index k = 0; k < filled; ++k) {
            v -= out.col(k).dot(v) * out.col(k);
        }
        double norm = v.norm();
        if (norm > 0.3) {
            // Re-orthogonalize once for numerical cleanliness.
            for (Eigen::Index k = 0; k < filled; ++k) {
                v -= out.col(k).dot(v) * out.col(k);
            }
            out.col(filled++) = v / v.norm();
        }
    }
    if (filled < dim) {
        throw std::invalid_argument("complete_basis: input columns are not orthonormal");
    }
    return out;
}

std::vector<QuantumState> srm_basis(const Ensemble& e) {
    int n = e.size();
    Matrix s = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const Vector& psi = e.state(i).amplitudes();
        s += e.prior(i) * (psi * psi.adjoint()).eval();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.eigenvalues().minCoeff() < 1e-12) {
        throw std::invalid_argument("srm_basis: ensemble does not span the space");
    }
    Vector inv_sqrt(n);
    for (int k = 0; k < n; ++k) {
        inv_sqrt(k) = 1.0 / std::sqrt(es.eigenvalues()(k));
    }
    Matrix s_minus_half = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
    std::vector<QuantumState> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vector v = s_minus_half * (std::sqrt(e.prior(i)) * e.state(i).amplitudes());
        basis.emplace_back(std::move(v));
    }
    return basis;
}

}  // namespace discrim
