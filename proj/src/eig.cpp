// Nonsymmetric complex eigensolver: Householder Hessenberg reduction followed by
// the single-shift complex QR algorithm (deflation and shift logic follow
// LAPACK's zlahqr), eigenvectors by substitution on the triangular factor.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epsrs/errors.hpp"
#include "epsrs/linalg.hpp"

namespace epsrs {

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();
constexpr double kExceptionalShift = 0.75;

double abs1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

struct Schur {
    ComplexMatrix t;
    ComplexMatrix q;  // empty unless requested
};

void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix* q) {
    const std::size_t n = h.rows();
    ComplexVector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double xnorm = 0.0;
        {
            ComplexVector x(len);
            for (std::size_t i = 0; i < len; ++i) x[i] = h(k + 1 + i, k);
            xnorm = norm2(x);
        }
        if (xnorm == 0.0) continue;
        const cplx x0 = h(k + 1, k);
        const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
        const cplx alpha = -phase * xnorm;
        for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
        v[0] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm += std::norm(v[i]);
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (std::size_t i = 0; i < len; ++i) v[i] /= vnorm;

        // h <- (I - 2 v v^H) h
        for (std::size_t j = k; j < n; ++j) {
            cplx s{};
            for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            s *= 2.0;
            for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
        }
        // h <- h (I - 2 v v^H), q <- q (I - 2 v v^H)
        auto apply_right = [&](ComplexMatrix& m) {
            for (std::size_t r = 0; r < n; ++r) {
                cplx s{};
                for (std::size_t i = 0; i < len; ++i) s += m(r, k + 1 + i) * v[i];
                s *= 2.0;
                for (std::size_t i = 0; i < len; ++i) m(r, k + 1 + i) -= s * std::conj(v[i]);
            }
        };
        apply_right(h);
        if (q != nullptr) apply_right(*q);
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

/// Givens rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx x, cplx y) {
    if (y == cplx{}) return {1.0, cplx{}};
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double nrm = std::hypot(ax, ay);
    return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

bool negligible_subdiagonal(const ComplexMatrix& h, std::size_t k, std::size_t lo_bound,
                            std::size_t hi_bound, double smlnum) {
    const cplx sub = h(k, k - 1);
    if (abs1(sub) <= smlnum) return true;
    double tst = abs1(h(k - 1, k - 1)) + abs1(h(k, k));
    if (tst == 0.0) {
        if (k >= lo_bound + 2) tst += std::abs(h(k - 1, k - 2).real());
        if (k + 1 <= hi_bound) tst += std::abs(h(k + 1, k).real());
    }
    if (std::abs(sub.real()) > kUlp * tst) return false;
    // Ahues & Tisseur refinement: only deflate when the perturbation is small
    // relative to the local eigenvalue separation.
    const double ab = std::max(abs1(sub), abs1(h(k - 1, k)));
    const double ba = std::min(abs1(sub), abs1(h(k - 1, k)));
    const double aa = std::max(abs1(h(k, k)), abs1(h(k - 1, k - 1) - h(k, k)));
    const double bb = std::min(abs1(h(k, k)), abs1(h(k - 1, k - 1) - h(k, k)));
    const double s = aa + ab;
    return ba * (ab / s) <= std::max(smlnum, kUlp * (bb * (aa / s)));
}

cplx wilkinson_shift(const ComplexMatrix& h, std::size_t i) {
    cplx t = h(i, i);
    const cplx u = std::sqrt(h(i - 1, i)) * std::sqrt(h(i, i - 1));
    double s = abs1(u);
    if (s != 0.0) {
        const cplx x = 0.5 * (h(i - 1, i - 1) - t);
        const double sx = abs1(x);
        s = std::max(s, sx);
        cplx y = s * std::sqrt((x / s) * (x / s) + (u / s) * (u / s));
        if (sx > 0.0) {
            const cplx xs = x / sx;
            if (xs.real() * y.real() + xs.imag() * y.imag() < 0.0) y = -y;
        }
        t -= u * (u / (x + y));
    }
    return t;
}

Schur complex_schur(const ComplexMatrix& a, bool want_q) {
    if (!a.is_square()) throw InputError("eigendecomposition requires a square matrix");
    const std::size_t n = a.rows();
    if (n > kMaxEigDimension) {
        throw InputError("eigendecomposition supports dimensions up to " +
                         std::to_string(kMaxEigDimension) + ", got " + std::to_string(n));
    }
    Schur out{a, want_q ? ComplexMatrix::identity(n) : ComplexMatrix{}};
    ComplexMatrix& h = out.t;
    ComplexMatrix* q = want_q ? &out.q : nullptr;
    reduce_to_hessenberg(h, q);
    if (n == 1) return out;

    const double smlnum = kSafeMin * (static_cast<double>(n) / kUlp);
    const int max_iter = 30 * static_cast<int>(std::max<std::size_t>(10, n));

    std::size_t hi = n - 1;
    int its = 0;
    while (true) {
        std::size_t l = hi;
        while (l > 0 && !negligible_subdiagonal(h, l, 0, hi, smlnum)) --l;
        if (l > 0) h(l, l - 1) = 0.0;
        if (l == hi) {
            if (hi == 0) break;
            --hi;
            its = 0;
            continue;
        }
        if (++its > max_iter) {
            throw ConvergenceError("QR iteration did not converge after " + std::to_string(max_iter) +
                                   " steps at index " + std::to_string(hi));
        }

        cplx shift;
        if (its == 10) {
            shift = kExceptionalShift * std::abs(h(l + 1, l).real()) + h(l, l);
        } else if (its == 20) {
            shift = kExceptionalShift * std::abs(h(hi, hi - 1).real()) + h(hi, hi);
        } else {
            shift = wilkinson_shift(h, hi);
        }

        cplx x = h(l, l) - shift;
        cplx y = h(l + 1, l);
        for (std::size_t k = l; k < hi; ++k) {
            if (k > l) {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
            }
            const Givens g = make_givens(x, y);
            const std::size_t col0 = k > l ? k - 1 : k;
            for (std::size_t j = col0; j < n; ++j) {
                const cplx p = h(k, j);
                const cplx r = h(k + 1, j);
                h(k, j) = g.c * p + g.s * r;
                h(k + 1, j) = -std::conj(g.s) * p + g.c * r;
            }
            const std::size_t row_end = std::min(k + 2, hi);
            for (std::size_t i = 0; i <= row_end; ++i) {
                const cplx p = h(i, k);
                const cplx r = h(i, k + 1);
                h(i, k) = p * g.c + r * std::conj(g.s);
                h(i, k + 1) = -p * g.s + r * g.c;
            }
            if (q != nullptr) {
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx p = (*q)(i, k);
                    const cplx r = (*q)(i, k + 1);
                    (*q)(i, k) = p * g.c + r * std::conj(g.s);
                    (*q)(i, k + 1) = -p * g.s + r * g.c;
                }
            }
            if (k > l) h(k + 1, k - 1) = 0.0;
        }
    }
    // clear below-diagonal roundoff
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
    return out;
}

constexpr double kRescaleAbove = 1e100;

void rescale_if_large(ComplexVector& x, double magnitude) {
    if (magnitude > kRescaleAbove) {
        const double f = 1.0 / magnitude;
        for (auto& z : x) z *= f;
    }
}

}  // namespace

std::vector<cplx> eigenvalues(const ComplexMatrix& a) {
    const Schur s = complex_schur(a, false);
    std::vector<cplx> ev(a.rows());
    for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = s.t(i, i);
    return ev;
}

std::vector<EigenPair> eig(const ComplexMatrix& a) {
    const Schur s = complex_schur(a, true);
    const ComplexMatrix& t = s.t;
    const std::size_t n = t.rows();

    double tmax = 0.0;
    for (const auto& z : t.entries()) tmax = std::max(tmax, abs1(z));

    std::vector<EigenPair> pairs;
    pairs.reserve(n);
    ComplexVector x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx lambda = t(k, k);
        const double smin = std::max({kUlp * abs1(lambda), kUlp * tmax, kSafeMin * 1e4});

        std::fill(x.begin(), x.end(), cplx{});
        x[k] = 1.0;
        for (std::size_t i = k; i-- > 0;) {
            cplx sum{};
            for (std::size_t j = i + 1; j <= k; ++j) sum += t(i, j) * x[j];
            cplx d = t(i, i) - lambda;
            if (abs1(d) < smin) d = smin;
            x[i] = -sum / d;
            rescale_if_large(x, std::abs(x[i]));
        }
        ComplexVector right = normalized(s.q * x);

        std::fill(x.begin(), x.end(), cplx{});
        x[k] = 1.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx sum{};
            for (std::size_t j = k; j < i; ++j) sum += std::conj(t(j, i)) * x[j];
            cplx d = std::conj(t(i, i) - lambda);
            if (abs1(d) < smin) d = smin;
            x[i] = -sum / d;
            rescale_if_large(x, std::abs(x[i]));
        }
        ComplexVector left = normalized(s.q * x);

        pairs.push_back({lambda, std::move(right), std::move(left)});
    }
    return pairs;
}

}  // namespace epsrs
