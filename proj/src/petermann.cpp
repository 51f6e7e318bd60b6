#include "epsrs/petermann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "epsrs/errors.hpp"

namespace epsrs {

namespace {

// eig() regularizes vanishing divisors at eps * ||T||, so a defective pair
// comes back with an overlap of that order rather than exactly zero.
constexpr double kDefectiveOverlap = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

double petermann_factor(const EigenPair& pair) {
    const double rr = norm2(pair.right);
    const double ll = norm2(pair.left);
    if (rr == 0.0 || ll == 0.0) throw InputError("eigenvectors must be nonzero");
    const double overlap = std::abs(inner(pair.left, pair.right));
    if (!(overlap > 1e-300) || overlap / (rr * ll) <= kDefectiveOverlap) {
        throw AtEpError("left/right overlap vanishes at eigenvalue " + format_double(pair.eigenvalue.real()) + "+" +
                        format_double(pair.eigenvalue.imag()) + "i: the state is defective");
    }
    const double root = (rr / overlap) * ll;
    return root * root;
}

ComplexMatrix projector_of_state(const EigenPair& pair) {
    petermann_factor(pair);
    const cplx overlap = inner(pair.left, pair.right);
    return (1.0 / overlap) * outer(pair.right, pair.left);
}

std::vector<PetermannRecord> petermann_records(const ComplexMatrix& h0) {
    std::vector<PetermannRecord> out;
    for (auto& pair : eig(h0)) {
        PetermannRecord r;
        r.factor = petermann_factor(pair);
        r.projector_norm = spectral_norm(projector_of_state(pair));
        r.eigen = std::move(pair);
        out.push_back(std::move(r));
    }
    return out;
}

ScanTable petermann_table(const std::vector<PetermannRecord>& records) {
    ScanTable t({"eigen_re", "eigen_im", "K", "proj_norm"});
    for (const auto& r : records) {
        t.add_row({r.eigen.eigenvalue.real(), r.eigen.eigenvalue.imag(), r.factor, r.projector_norm});
    }
    return t;
}

double bauer_fike_bound(double k_factor, double epsilon, double h1_norm) {
    if (k_factor < 0.0 || epsilon < 0.0 || h1_norm < 0.0) {
        throw InputError("bauer_fike_bound inputs must be nonnegative");
    }
    return epsilon * h1_norm * std::sqrt(k_factor);
}

PetermannEstimate xi_via_petermann(const ComplexMatrix& h0, cplx lambda_ep, std::size_t n, double eta,
                                   std::uint64_t seed) {
    if (!h0.is_square()) throw InputError("xi_via_petermann requires a square matrix");
    if (n < 1 || n > h0.rows()) throw InputError("EP order must lie in [1, dim]");
    if (std::isnan(eta)) throw InputError("eta must be a number");
    if (eta <= 0.0) throw AtEpError("eta = 0 leaves the EP unsplit; the Petermann factor diverges");

    std::mt19937_64 rng(seed);
    ComplexMatrix noise = random_ginibre(h0.rows(), rng);
    noise *= eta / spectral_norm(noise);
    const auto pairs = eig(h0 + noise);

    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(pairs[i].eigenvalue - lambda_ep) < std::abs(pairs[j].eigenvalue - lambda_ep);
    });
    const double reach = std::abs(pairs[order[n - 1]].eigenvalue - lambda_ep);
    if (n < pairs.size()) {
        const double foreign = std::abs(pairs[order[n]].eigenvalue - lambda_ep);
        if (!(reach < 0.5 * foreign)) {
            throw SeparationError("perturbed cluster (radius " + format_double(reach) +
                                  ") is not separated from the nearest foreign eigenvalue (distance " +
                                  format_double(foreign) + ")");
        }
    }

    PetermannEstimate est;
    est.seed = seed;
    est.eta = eta;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& pair = pairs[order[k]];
        const double root_k = std::sqrt(petermann_factor(pair));
        const double value = static_cast<double>(n) *
                             std::pow(std::abs(pair.eigenvalue - lambda_ep), static_cast<double>(n - 1)) * root_k;
        est.member_estimates.push_back(value);
        est.member_eigenvalues.push_back(pair.eigenvalue);
        sum += value;
    }
    est.xi = sum / static_cast<double>(n);
    return est;
}

}  // namespace epsrs
