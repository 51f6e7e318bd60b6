#pragma once

#include <cstdint>
#include <vector>

#include "epsrs/linalg.hpp"
#include "epsrs/scan_table.hpp"

namespace epsrs {

/// <R|R><L|L> / |<L|R>|^2 (>= 1). Throws AtEpError when the normalized overlap
/// is at roundoff level, i.e. the state is defective.
double petermann_factor(const EigenPair& pair);

/// |R><L| / <L|R>.
ComplexMatrix projector_of_state(const EigenPair& pair);

struct PetermannRecord {
    EigenPair eigen;
    double factor = 1.0;          ///< K
    double projector_norm = 1.0;  ///< ||P||_2
};

/// One record per eigenpair of h0.
std::vector<PetermannRecord> petermann_records(const ComplexMatrix& h0);

/// Columns eigen_re, eigen_im, K, proj_norm.
ScanTable petermann_table(const std::vector<PetermannRecord>& records);

/// epsilon ||H1||_2 sqrt(K).
double bauer_fike_bound(double k_factor, double epsilon, double h1_norm);

struct PetermannEstimate {
    double xi = 0.0;                      ///< mean of the member estimates
    std::vector<double> member_estimates; ///< n |E_l - lambda|^{n-1} sqrt(K_l)
    std::vector<cplx> member_eigenvalues;
    std::uint64_t seed = 0;
    double eta = 0.0;
};

/**
 * Estimates xi by splitting the EP with eta * H_rand (complex Ginibre, scaled
 * to unit spectral norm, drawn from mt19937_64(seed)) and reading off the
 * Petermann factors of the n perturbed eigenvalues nearest lambda_ep.
 *
 * eta <= 0 leaves the EP intact: AtEpError. SeparationError if the members
 * are not closer to lambda_ep than half the distance to the nearest other
 * perturbed eigenvalue.
 */
PetermannEstimate xi_via_petermann(const ComplexMatrix& h0, cplx lambda_ep, std::size_t n, double eta,
                                   std::uint64_t seed);

}  // namespace epsrs
