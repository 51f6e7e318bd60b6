#pragma once

// Independent reference computations shared by the test binaries.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "epsrs/linalg.hpp"
#include "epsrs/matrix.hpp"

namespace support {

using epsrs::ComplexMatrix;
using epsrs::cplx;

inline double rel_err(double value, double exact) { return std::abs(value - exact) / std::abs(exact); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Modulus uniform in [lo, hi], phase uniform.
inline cplx random_complex(std::mt19937_64& rng, double lo, double hi) {
    return std::polar(uniform(rng, lo, hi), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

struct JordanSample {
    ComplexMatrix h;
    cplx lambda;
    double xi;  // product of the superdiagonal moduli
    ComplexMatrix u;
};

/// U J U^H for a single n x n Jordan block with random superdiagonal
/// (moduli in [0.5, 2]). J^{n-1} has the single entry prod(s_k), so xi is exact.
inline JordanSample random_jordan(std::size_t n, std::mt19937_64& rng) {
    JordanSample s;
    s.lambda = random_complex(rng, 0.0, 2.0);
    ComplexMatrix j(n, n);
    s.xi = 1.0;
    for (std::size_t k = 0; k < n; ++k) j(k, k) = s.lambda;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const cplx v = random_complex(rng, 0.5, 2.0);
        j(k, k + 1) = v;
        s.xi *= std::abs(v);
    }
    s.u = epsrs::random_unitary(n, rng);
    s.h = s.u * j * s.u.adjoint();
    return s;
}

/// Largest singular value by power iteration on a^H a.
inline double power_norm(const ComplexMatrix& a, int iterations = 500) {
    const ComplexMatrix g = a.adjoint() * a;
    std::vector<cplx> v(g.cols(), cplx{1.0, 0.1});
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<cplx> w = g * v;
        double nrm = 0.0;
        for (auto& z : w) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (auto& z : w) z /= nrm;
        lambda = nrm;
        v = w;
    }
    return std::sqrt(lambda);
}

/// Least-squares slope of log10 y against log10 x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log10(x[i]);
        const double ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

inline double frob(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Closed-form toy strength |a| sqrt(1 + |b|^2 / d^2), written out independently.
inline double toy_xi2_ref(double d, cplx a = -1.0, cplx b = -1.0) {
    return std::abs(a) * std::sqrt(1.0 + std::norm(b) / (d * d));
}

}  // namespace support
