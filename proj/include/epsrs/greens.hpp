#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "epsrs/matrix.hpp"

namespace epsrs {

/// G(E) = (E 1 - h0)^{-1}. Throws SingularMatrixError when E hits the spectrum.
ComplexMatrix greens_function(const ComplexMatrix& h0, cplx energy);

/// log10 ||G(E)||_2.
double log10_resolvent_norm(const ComplexMatrix& h0, cplx energy);

struct AxisRange {
    double lo;
    double hi;
};

/// Uniform samples lo, ..., hi (both included); points >= 2.
std::vector<double> uniform_axis(AxisRange range, std::size_t points);

/**
 * log10 of the spectral norm of the resolvent on a uniform grid.
 *
 * `values` is row-major with the imaginary axis slow: values[i * re.size() + j]
 * belongs to E = re_axis[j] + i im_axis[i]. The epsilon-pseudospectrum is the
 * strict superlevel set values > -log10(epsilon).
 */
struct PseudospectrumGrid {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    std::vector<double> values;
    /// Flattened indices of grid points that sat on an eigenvalue and were moved
    /// by 1e-6 of a cell width along the real axis before evaluation.
    std::vector<std::size_t> nudged;

    double at(std::size_t im_index, std::size_t re_index) const {
        return values[im_index * re_axis.size() + re_index];
    }
};

PseudospectrumGrid pseudospectrum(const ComplexMatrix& h0, AxisRange re, AxisRange im,
                                  std::size_t re_points, std::size_t im_points);

/// CSV with header "re,im,log10_norm", one row per grid point, row-major.
void write_grid_csv(std::ostream& out, const PseudospectrumGrid& grid);

/// Number of 4-connected components of {values > -c}.
std::size_t count_components(const PseudospectrumGrid& grid, double c);

/// True if the grid points nearest `a` and `b` lie in the same 4-connected
/// component of {values > -c}.
bool poles_connected(const PseudospectrumGrid& grid, cplx a, cplx b, double c);

struct SeparatrixOptions {
    AxisRange re;
    AxisRange im;
    std::size_t resolution = 401;
    /// Bracket for c = log10(epsilon). When unset it is taken from the grid's value range.
    std::optional<double> c_lo;
    std::optional<double> c_hi;
    double tolerance = 1e-4;
};

/**
 * Level c* = log10(epsilon) at which the superlevel-set components around
 * pole_a and pole_b merge. Bisection on c with component counting; the grid
 * is refined twofold once the bracket is narrower than 0.05.
 *
 * Throws BracketError if [c_lo, c_hi] does not bracket the merge.
 */
double separatrix_level(const ComplexMatrix& h0, cplx pole_a, cplx pole_b,
                        const SeparatrixOptions& options);

}  // namespace epsrs
