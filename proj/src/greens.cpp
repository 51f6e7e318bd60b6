#include "epsrs/greens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "epsrs/errors.hpp"
#include "epsrs/linalg.hpp"
#include "epsrs/parallel.hpp"
#include "epsrs/scan_table.hpp"

namespace epsrs {

namespace {

constexpr double kHitTolerance = 1e-14;
constexpr double kNudgeFraction = 1e-6;
constexpr double kRefineBelow = 0.05;

std::size_t nearest_index(const std::vector<double>& axis, double x) {
    const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
    const double t = std::round((x - axis.front()) / h);
    if (t <= 0.0) return 0;
    return std::min(axis.size() - 1, static_cast<std::size_t>(t));
}

/// Flood fill of {values > threshold} from `start`; returns the visited mask.
std::vector<char> flood(const PseudospectrumGrid& g, double threshold, std::size_t start) {
    const std::size_t nx = g.re_axis.size();
    const std::size_t ny = g.im_axis.size();
    std::vector<char> seen(nx * ny, 0);
    if (!(g.values[start] > threshold)) return seen;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        const std::size_t i = k / nx;
        const std::size_t j = k % nx;
        auto visit = [&](std::size_t kk) {
            if (!seen[kk] && g.values[kk] > threshold) {
                seen[kk] = 1;
                stack.push_back(kk);
            }
        };
        if (j > 0) visit(k - 1);
        if (j + 1 < nx) visit(k + 1);
        if (i > 0) visit(k - nx);
        if (i + 1 < ny) visit(k + nx);
    }
    return seen;
}

}  // namespace

ComplexMatrix greens_function(const ComplexMatrix& h0, cplx energy) {
    if (!h0.is_square()) throw InputError("Green's function requires a square Hamiltonian");
    ComplexMatrix m = -1.0 * h0;
    m.add_to_diagonal(energy);
    return invert(m);
}

double log10_resolvent_norm(const ComplexMatrix& h0, cplx energy) {
    return std::log10(spectral_norm(greens_function(h0, energy)));
}

std::vector<double> uniform_axis(AxisRange range, std::size_t points) {
    if (points < 2) throw InputError("an axis needs at least 2 points");
    if (!(range.hi > range.lo)) throw InputError("axis range must satisfy lo < hi");
    std::vector<double> axis(points);
    const double h = (range.hi - range.lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) axis[i] = range.lo + h * static_cast<double>(i);
    axis.back() = range.hi;
    return axis;
}

PseudospectrumGrid pseudospectrum(const ComplexMatrix& h0, AxisRange re, AxisRange im,
                                  std::size_t re_points, std::size_t im_points) {
    if (!h0.is_square()) throw InputError("pseudospectrum requires a square Hamiltonian");
    PseudospectrumGrid g;
    g.re_axis = uniform_axis(re, re_points);
    g.im_axis = uniform_axis(im, im_points);
    const std::size_t nx = re_points;
    const std::size_t total = nx * im_points;
    g.values.assign(total, 0.0);
    std::vector<char> moved(total, 0);

    const std::vector<cplx> spectrum = eigenvalues(h0);
    const double nudge = kNudgeFraction * (g.re_axis[1] - g.re_axis[0]);

    parallel_for(total, [&](std::size_t k) {
        cplx e{g.re_axis[k % nx], g.im_axis[k / nx]};
        bool hit = false;
        for (const auto& lambda : spectrum) {
            if (std::abs(e - lambda) <= kHitTolerance * std::max(1.0, std::abs(lambda))) hit = true;
        }
        if (hit) e += nudge;
        double v;
        try {
            v = log10_resolvent_norm(h0, e);
        } catch (const SingularMatrixError&) {
            hit = true;
            e += nudge;
            v = log10_resolvent_norm(h0, e);
        }
        if (!std::isfinite(v)) {
            throw NumericalError("non-finite resolvent norm at E = " + format_double(e.real()) + " + " +
                                 format_double(e.imag()) + "i");
        }
        g.values[k] = v;
        moved[k] = hit ? 1 : 0;
    });
    for (std::size_t k = 0; k < total; ++k)
        if (moved[k]) g.nudged.push_back(k);
    return g;
}

void write_grid_csv(std::ostream& out, const PseudospectrumGrid& grid) {
    out << "re,im,log10_norm\n";
    const std::size_t nx = grid.re_axis.size();
    for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
        for (std::size_t j = 0; j < nx; ++j) {
            out << format_double(grid.re_axis[j]) << ',' << format_double(grid.im_axis[i]) << ','
                << format_double(grid.values[i * nx + j]) << '\n';
        }
    }
}

std::size_t count_components(const PseudospectrumGrid& grid, double c) {
    const double threshold = -c;
    const std::size_t total = grid.values.size();
    std::vector<char> labelled(total, 0);
    std::size_t count = 0;
    for (std::size_t k = 0; k < total; ++k) {
        if (labelled[k] || !(grid.values[k] > threshold)) continue;
        ++count;
        const auto comp = flood(grid, threshold, k);
        for (std::size_t q = 0; q < total; ++q)
            if (comp[q]) labelled[q] = 1;
    }
    return count;
}

bool poles_connected(const PseudospectrumGrid& grid, cplx a, cplx b, double c) {
    const std::size_t nx = grid.re_axis.size();
    const std::size_t ka = nearest_index(grid.im_axis, a.imag()) * nx + nearest_index(grid.re_axis, a.real());
    const std::size_t kb = nearest_index(grid.im_axis, b.imag()) * nx + nearest_index(grid.re_axis, b.real());
    const auto comp = flood(grid, -c, ka);
    return comp[kb] != 0;
}

double separatrix_level(const ComplexMatrix& h0, cplx pole_a, cplx pole_b,
                        const SeparatrixOptions& options) {
    if (pole_a == pole_b) throw InputError("separatrix_level needs two distinct poles");
    auto inside = [](AxisRange r, double x) { return x >= r.lo && x <= r.hi; };
    if (!inside(options.re, pole_a.real()) || !inside(options.im, pole_a.imag()) ||
        !inside(options.re, pole_b.real()) || !inside(options.im, pole_b.imag())) {
        throw InputError("both poles must lie inside the search window");
    }

    std::size_t resolution = options.resolution;
    PseudospectrumGrid grid = pseudospectrum(h0, options.re, options.im, resolution, resolution);
    auto connected = [&](double c) { return poles_connected(grid, pole_a, pole_b, c); };

    const auto [vmin, vmax] = std::minmax_element(grid.values.begin(), grid.values.end());
    double lo = options.c_lo.value_or(-*vmax - 0.5);
    double hi = options.c_hi.value_or(-*vmin + 0.5);
    if (!(lo < hi) || connected(lo) || !connected(hi)) {
        throw BracketError("window [" + format_double(lo) + ", " + format_double(hi) +
                           "] does not bracket the merge of the two components");
    }

    bool refined = false;
    while (hi - lo > options.tolerance) {
        if (!refined && hi - lo < kRefineBelow) {
            resolution = 2 * resolution - 1;
            grid = pseudospectrum(h0, options.re, options.im, resolution, resolution);
            refined = true;
            // the finer grid can shift the merge level slightly; widen until bracketed again
            for (int step = 0; connected(lo) && step < 40; ++step) lo -= kRefineBelow;
            for (int step = 0; !connected(hi) && step < 40; ++step) hi += kRefineBelow;
            if (connected(lo) || !connected(hi)) {
                throw BracketError("merge level not bracketed after grid refinement");
            }
            continue;
        }
        const double mid = 0.5 * (lo + hi);
        if (connected(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace epsrs
