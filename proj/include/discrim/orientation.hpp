#pragma once

#include <span>
#include <vector>

#include "discrim/rng.hpp"
#include "discrim/types.hpp"

namespace discrim {

enum class Field { Real, Complex };

// Number of generator parameters: dim(dim-1)/2 antisymmetric entries for the
// real field, dim^2 - dim for the complex field (off-diagonal skew-Hermitian
// entries; per-vector phases are omitted since rates are phase invariant).
int parameter_count(int dim, Field field);

// Antisymmetric (real) or skew-Hermitian (complex) generator with the given
// off-diagonal entries, row-major over i < j.
Matrix generator_from_parameters(std::span<const double> params, int dim, Field field);

// exp(G) for skew-Hermitian G, computed through the eigendecomposition of the
// Hermitian matrix -iG. Unitary to machine precision.
Matrix unitary_from_generator(const Matrix& generator);

// Columns of exp(G) as basis vectors.
std::vector<QuantumState> basis_from_parameters(std::span<const double> params, int dim,
                                                Field field);

// Haar-like random unitary from the QR factorization of a Gaussian matrix.
Matrix random_unitary(int dim, SplitMix64& rng);

// Unitary whose first columns.cols() columns equal the given orthonormal
// columns, completed by Gram-Schmidt over the standard basis.
Matrix complete_basis(const Matrix& columns);

// Square-root measurement basis: column i is S^{-1/2} sqrt(eta_i) |psi_i>
// with S = sum eta_i |psi_i><psi_i|. Orthonormal for linearly independent
// states; a good complete-measurement reference orientation.
std::vector<QuantumState> srm_basis(const Ensemble& e);

}  // namespace discrim
