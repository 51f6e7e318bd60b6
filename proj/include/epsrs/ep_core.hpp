#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epsrs/json_io.hpp"
#include "epsrs/matrix.hpp"
#include "epsrs/scan_table.hpp"

namespace epsrs {

/// A group of numerically coincident eigenvalues of h0: an isolated state
/// (order 1, multiplicity 1), an exceptional point (order >= 2), or a
/// degenerate but diagonalizable level (order 1, multiplicity > 1).
struct SpectralCluster {
    cplx eigenvalue;                  ///< centroid of the members
    std::size_t algebraic_multiplicity = 1;
    std::size_t order = 1;            ///< Jordan block size
    std::vector<std::size_t> member_indices;  ///< into eigenvalues(h0)
};

/// Integration circle in the complex energy plane.
struct Contour {
    cplx center;
    double radius = 0.0;
    std::size_t nodes = 64;  ///< starting node count; a power of two >= 16
};

struct ClusterOptions {
    /// Chaining tolerance; defaults to max(1e-10, 1e-8 ||h0||_F).
    std::optional<double> tolerance;
    /// Skip the rank test and use this order instead.
    std::optional<std::size_t> declared_order;
    /// Cluster the declared order applies to (nearest centroid). When unset the
    /// declared order applies to every cluster with multiplicity > 1.
    std::optional<cplx> declared_near;
};

double default_cluster_tolerance(const ComplexMatrix& h0);

/**
 * Groups the eigenvalues of h0 into clusters and determines each cluster's
 * Jordan order.
 *
 * Two eigenvalues are chained when their distance is below the tolerance, or
 * below 100 u ||h0||_F min(sqrt(K_i), sqrt(K_j)) (u = unit roundoff, K the
 * Petermann factor of the computed pair), which is the spread that rounding
 * alone produces when QR splits a defective eigenvalue. Pairs whose overlap
 * is at roundoff level (sqrt(K) >= 1/(64 u)) only use the tolerance.
 *
 * The order of a cluster with multiplicity a > 1 is the smallest k <= a with
 * ||N^k||_2 <= 1e-8 max(||h0||_F, ||N||_2)^k, where N = (h0 - lambda) P and P is
 * the cluster's spectral projector from a contour integral. If the decision
 * is within one decade of the threshold, AmbiguousOrderError is thrown and
 * the caller should declare the order.
 */
std::vector<SpectralCluster> cluster_spectrum(const ComplexMatrix& h0, const ClusterOptions& options = {});

/// Circle around the cluster centroid. Radius is half the distance to the
/// nearest foreign eigenvalue; for a cluster holding the whole spectrum it is
/// chosen so that no Laurent term dominates the leading coefficient.
Contour default_contour(const ComplexMatrix& h0, const SpectralCluster& cluster);

/// Throws ContourError unless exactly the cluster's members lie strictly inside
/// the circle and nodes is a power of two >= 16.
void validate_contour(const ComplexMatrix& h0, const SpectralCluster& cluster, const Contour& contour);

/// Spectral response strength of one cluster.
struct EpReport {
    SpectralCluster cluster;
    ComplexMatrix w_operator;      ///< N^{n-1}; the projector P for order-1 clusters
    double strength = 0.0;         ///< ||W||_F for EPs, ||P||_2 for order 1
    double rank1_residual = 0.0;   ///< sigma_2(W) / sigma_1(W)
    std::size_t quadrature_nodes_used = 0;
    bool converged = true;
};

json to_json(const EpReport& report);

/// m = n route: W = (h0 - lambda_ep)^{n-1}, xi = ||W||_F.
/// Throws NotAnEpError unless (h0 - lambda_ep) is nilpotent of index n.
EpReport xi_special(const ComplexMatrix& h0, cplx lambda_ep, std::size_t n);

struct QuadratureOptions {
    std::size_t max_nodes = 4096;
    double tolerance = 1e-13;  ///< relative agreement of successive estimates
};

/**
 * General route: W = (1/2 pi i) \oint (E - lambda)^{n-1} G(E) dE by the
 * trapezoidal rule on the circle, doubling the node count until successive
 * strengths agree to `tolerance`. Non-convergence at the node cap is reported
 * through EpReport::converged, not thrown.
 */
EpReport xi_residue(const ComplexMatrix& h0, const SpectralCluster& cluster, const Contour& contour,
                    const QuadratureOptions& quadrature = {});

/// Convenience: default contour.
EpReport xi_residue(const ComplexMatrix& h0, const SpectralCluster& cluster);

struct SpectralDecomposition {
    std::vector<SpectralCluster> clusters;
    std::vector<ComplexMatrix> projectors;                     ///< P_l
    std::vector<std::vector<ComplexMatrix>> nilpotent_powers;  ///< N_l^1 ... N_l^{n_l - 1}
    std::vector<bool> converged;

    /// Reassembled G(E) = sum_l [P_l / (E - E_l) + sum_k N_l^{k-1} / (E - E_l)^k].
    ComplexMatrix resolvent(cplx energy) const;
};

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h0,
                                             std::span<const SpectralCluster> clusters,
                                             std::span<const Contour> contours);

/// Clusters from cluster_spectrum() and their default contours.
SpectralDecomposition spectral_decomposition(const ComplexMatrix& h0);

/// ||W H1 W||_F / (||W||_F^2 ||H1||_2): zero iff the perturbation is non-generic
/// (N^{n-1} H1 |R> = 0) for the rank-1 operator W.
double perturbation_genericity(const ComplexMatrix& w_operator, const ComplexMatrix& h1);

struct PassiveBound {
    double bound;
    bool satisfied;
};

/// bound = (sqrt(2n) |Im lambda_EP|)^{n-1}; satisfied = xi <= bound.
PassiveBound passive_bound_check(const EpReport& report, std::size_t n);

/// (epsilon ||H1||_2 xi)^{1/n}: radius bound on the eigenvalue displacement.
double splitting_bound(double xi, std::size_t n, double epsilon, double h1_norm);

struct SurfaceScanOptions {
    std::size_t order = 2;
    /// Returns a point next to the EP of interest for a parameter value; used
    /// to pick the cluster. Without it the first cluster of the declared order is used.
    std::function<cplx(double)> ep_locator;
    std::optional<double> contour_radius;
    std::optional<double> cluster_tolerance;
};

/**
 * xi of an order-n EP for each parameter sample, sorted by parameter.
 * Columns: parameter, xi, lambda_re, lambda_im, foreign_distance, flagged.
 * Samples that fail validation are kept with flagged = 1 (xi = nan if no
 * value could be computed).
 */
ScanTable surface_scan(const std::function<ComplexMatrix(double)>& generator,
                       std::vector<double> samples, const SurfaceScanOptions& options);

}  // namespace epsrs
