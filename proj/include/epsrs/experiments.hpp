#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "epsrs/greens.hpp"
#include "epsrs/models.hpp"
#include "epsrs/scan_table.hpp"

namespace epsrs {

/// Log-spaced samples from lo to hi (both included), per_decade points per decade.
std::vector<double> log_space(double lo, double hi, std::size_t per_decade = 25);

/// Exactly `count` log-spaced samples from lo to hi.
std::vector<double> log_space_count(double lo, double hi, std::size_t count);

/// Toy model with e_a = 0, e_b = detuning.
ToyModelParams toy_at_detuning(double detuning, cplx a = -1.0, cplx b = -1.0);

/// Displacement of the eigenvalue of h0 + epsilon h1 nearest e_a (smallest
/// displacement, lowest index on ties).
double toy_splitting(const ToyModelParams& p, double epsilon);

struct Fig2Options {
    double detuning_lo = 1e-4;
    double detuning_hi = 1.0;
    std::size_t per_decade = 25;
    double epsilon = 1e-8;
    cplx a{-1.0};
    cplx b{-1.0};
};

/// Columns detuning, splitting, bound_ep2, bound_ep3. The first row is the
/// zero-detuning point, where bound_ep2 = inf.
ScanTable fig2_table(const Fig2Options& options);

struct Fig3Options {
    double epsilon_lo = 1e-14;
    double epsilon_hi = 1e-2;
    std::size_t per_decade = 25;
    double detuning = 2e-3;
    cplx a{-1.0};
    cplx b{-1.0};
};

/// Columns epsilon, splitting, bound_ep2, bound_ep3.
ScanTable fig3_table(const Fig3Options& options);

struct Fig4Options {
    double detuning = 2e-3;
    cplx a{-1.0};
    cplx b{-1.0};
    /// Defaults to a square centred between the two poles with half-width 1.25 |e_b - e_a|.
    std::optional<AxisRange> re;
    std::optional<AxisRange> im;
    std::size_t resolution = 401;
};

struct Fig4Result {
    PseudospectrumGrid grid;
    double separatrix_c = 0.0;
};

Fig4Result fig4_run(const Fig4Options& options);

struct Fig5Options {
    double detuning_lo = 1e-3;
    double detuning_hi = 1.0;
    std::size_t per_decade = 25;
    /// Overrides per_decade when set.
    std::optional<std::size_t> points;
    double contour_radius = 1e-11;
    std::size_t nodes = 64;
    double eta = 1e-21;
    std::uint64_t seed = 20240917;
    cplx a{-1.0};
    cplx b{-1.0};
};

/// Columns detuning, err_residue, err_petermann (relative errors against toy_xi2).
ScanTable fig5_table(const Fig5Options& options);

struct ToyScanOptions {
    double detuning_lo = 1e-4;
    double detuning_hi = 1.0;
    std::size_t per_decade = 25;
    cplx a{-1.0};
    cplx b{-1.0};
    std::optional<double> contour_radius;
};

/// EP2 strength along the toy exceptional surface (parameter = detuning);
/// surface_scan columns plus compensated = xi * detuning.
ScanTable toy_surface_scan(const ToyScanOptions& options);

struct ChiralityScanOptions {
    double gap_lo = 1e-4;
    double gap_hi = 1e-1;
    std::size_t per_decade = 25;
    cplx omega_is{1.0, -0.5};
    cplx omega_ch{1.0, -2.0};
    cplx a{1.0};
    double phase = 0.0;  ///< arg(Omega_+ - Omega_-)
    std::optional<double> contour_radius;
};

/// Chirality parameters with b = 0 and |Omega_+ - Omega_-| = gap at the given phase.
ChiralityModelParams chirality_at_gap(const ChiralityScanOptions& options, double gap);

/// EP2 (+ branch) strength approaching the EP4 (parameter = gap);
/// surface_scan columns plus compensated = xi * gap^2.
ScanTable chirality_surface_scan(const ChiralityScanOptions& options);

}  // namespace epsrs
