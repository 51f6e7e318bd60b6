#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "epsrs/matrix.hpp"

namespace epsrs {

/// sqrt(sum |a_ij|^2) = sqrt(tr(a^H a)).
double frobenius_norm(const ComplexMatrix& a);

/// Singular values in descending order (one-sided Jacobi, at most 100 sweeps).
std::vector<double> singular_values(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Inverse by LU with partial pivoting.
/// Throws SingularMatrixError when a pivot modulus falls below 1e-300.
ComplexMatrix invert(const ComplexMatrix& a);

/// One eigenvalue with unit-norm right and left eigenvectors:
/// a R = E R and a^H L = conj(E) L.
struct EigenPair {
    cplx eigenvalue;
    ComplexVector right;
    ComplexVector left;
};

/// Eigenvalues (with multiplicity) from the complex Schur form.
std::vector<cplx> eigenvalues(const ComplexMatrix& a);

/**
 * Full eigendecomposition: Hessenberg reduction, implicitly shifted complex QR,
 * then right and left eigenvectors by back/forward substitution on the Schur
 * factor. Left and right vectors of one pair share the same Schur diagonal
 * entry, so their pairing is exact. Near-coincident diagonal entries are
 * handled by perturbing the divisor to eps * ||T||, which yields nearly
 * parallel vectors for defective eigenvalues.
 *
 * Requires a square matrix of dimension at most 256.
 */
std::vector<EigenPair> eig(const ComplexMatrix& a);

/// Maximum supported dimension for eig().
inline constexpr std::size_t kMaxEigDimension = 256;

/// Complex Ginibre sample: iid entries with E|z|^2 = 1.
ComplexMatrix random_ginibre(std::size_t n, std::mt19937_64& rng);

/// Haar-distributed unitary (QR of a Ginibre sample with phase fix).
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace epsrs
