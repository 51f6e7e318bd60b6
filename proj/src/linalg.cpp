#include "epsrs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epsrs/errors.hpp"
#include "epsrs/log.hpp"

namespace epsrs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 100;
constexpr double kPivotFloor = 1e-300;
constexpr double kConditionWarning = 1e14;

double one_norm(const ComplexMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

double frobenius_norm(const ComplexMatrix& a) { return norm2(a.entries()); }

std::vector<double> singular_values(const ComplexMatrix& a) {
    // One-sided Jacobi on the columns of a (or of a^H when a is wide).
    const ComplexMatrix& src = a;
    const bool wide = a.rows() < a.cols();
    const ComplexMatrix work_src = wide ? a.adjoint() : ComplexMatrix{};
    const ComplexMatrix& m = wide ? work_src : src;

    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<ComplexVector> col(cols, ComplexVector(rows));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) col[j][i] = m(i, j);

    const double tol = std::max(1e-15, static_cast<double>(rows) * kEps);
    bool converged = cols < 2;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                auto& cp = col[p];
                auto& cq = col[q];
                double alpha = 0.0, beta = 0.0;
                cplx gamma{};
                for (std::size_t i = 0; i < rows; ++i) {
                    alpha += std::norm(cp[i]);
                    beta += std::norm(cq[i]);
                    gamma += std::conj(cp[i]) * cq[i];
                }
                const double g = std::abs(gamma);
                if (alpha == 0.0 || beta == 0.0 || g <= tol * std::sqrt(alpha) * std::sqrt(beta)) {
                    continue;
                }
                rotated = true;
                const cplx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const cplx x = cp[i];
                    const cplx y = cq[i] * std::conj(phase);
                    cp[i] = c * x - s * y;
                    cq[i] = (s * x + c * y) * phase;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw ConvergenceError("Jacobi SVD did not converge in " + std::to_string(kMaxJacobiSweeps) +
                               " sweeps");
    }
    std::vector<double> sv(cols);
    for (std::size_t j = 0; j < cols; ++j) sv[j] = norm2(col[j]);
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double spectral_norm(const ComplexMatrix& a) { return singular_values(a).front(); }

ComplexMatrix invert(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("invert requires a square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best >= kPivotFloor)) {
            throw SingularMatrixError("matrix is singular to working precision (pivot " +
                                          std::to_string(best) + " in column " + std::to_string(k) + ")",
                                      best);
        }
        if (piv != k) {
            std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
            std::swap(perm[k], perm[piv]);
        }
        const cplx inv_pivot = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) * inv_pivot;
            lu(i, k) = f;
            if (f == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }

    ComplexMatrix inv(n, n);
    ComplexVector x(n);
    for (std::size_t col = 0; col < n; ++col) {
        // Solve L U x = P e_col.
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = perm[i] == col ? cplx{1.0} : cplx{};
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            cplx s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
            x[i] = s / lu(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }

    if (log_level() != LogLevel::off) {
        const double cond = one_norm(a) * one_norm(inv);
        if (cond > kConditionWarning) {
            log_message(LogLevel::warning, "invert: 1-norm condition number " + std::to_string(cond));
        }
    }
    return inv;
}

ComplexMatrix random_ginibre(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<cplx> entries(n * n);
    for (auto& z : entries) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return ComplexMatrix(n, n, std::move(entries));
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix g = random_ginibre(n, rng);
    std::vector<ComplexVector> q;
    q.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector v = g.column(j);
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : q) {
                const cplx proj = inner(u, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
        }
        q.push_back(normalized(std::move(v)));
    }
    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) = q[j][i];
    return u;
}

}  // namespace epsrs
