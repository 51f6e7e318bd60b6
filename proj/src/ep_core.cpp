#include "epsrs/ep_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "epsrs/errors.hpp"
#include "epsrs/linalg.hpp"
#include "epsrs/parallel.hpp"

namespace epsrs {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kConditionMergeFactor = 100.0;
constexpr double kOverlapFloorSqrtK = 1.0 / (64.0 * kUnitRoundoff);
constexpr double kRankThreshold = 1e-8;
constexpr std::size_t kNodeChunk = 64;
constexpr double kDecompositionTolerance = 1e-12;
constexpr double kNilpotencyTolerance = 1e-10;
constexpr double kNoiseFloor = 1e-8;
constexpr double kStallRatio = 0.25;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place pairwise reduction with a fixed tree, independent of thread count.
ComplexMatrix pairwise_sum(std::vector<ComplexMatrix> terms) {
    std::size_t len = terms.size();
    while (len > 1) {
        const std::size_t half = (len + 1) / 2;
        for (std::size_t i = 0; i + half < len; ++i) terms[i] += terms[i + half];
        len = half;
    }
    return std::move(terms.front());
}

/**
 * Trapezoidal sums over the nodes j = first, first + stride, ... < grid of the
 * circle |E - center| = radius with `grid` equispaced nodes:
 *   S_p = sum_j z_j^{p+1} G(center + z_j),  z_j = radius e^{2 pi i j / grid}.
 * Dividing by `grid` gives (1/2 pi i) \oint (E - center)^p G(E) dE.
 */
std::vector<ComplexMatrix> node_sums(const ComplexMatrix& h0_shifted, double radius, std::size_t grid,
                                     std::size_t first, std::size_t stride,
                                     std::span<const unsigned> powers) {
    const std::size_t m = h0_shifted.rows();
    const std::size_t count = (grid - first + stride - 1) / stride;
    std::vector<std::vector<ComplexMatrix>> chunk_sums(powers.size());

    for (std::size_t chunk_begin = 0; chunk_begin < count; chunk_begin += kNodeChunk) {
        const std::size_t chunk_len = std::min(kNodeChunk, count - chunk_begin);
        std::vector<ComplexMatrix> resolvents(chunk_len);
        std::vector<std::size_t> node_index(chunk_len);
        parallel_for(chunk_len, [&](std::size_t t) {
            const std::size_t j = first + (chunk_begin + t) * stride;
            node_index[t] = j;
            const cplx z = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                                  static_cast<double>(grid));
            ComplexMatrix a = -1.0 * h0_shifted;
            a.add_to_diagonal(z);
            resolvents[t] = invert(a);
        });
        for (std::size_t p = 0; p < powers.size(); ++p) {
            const unsigned e = powers[p] + 1;
            const double scale = std::pow(radius, static_cast<double>(e));
            std::vector<ComplexMatrix> weighted(chunk_len, ComplexMatrix(m, m));
            for (std::size_t t = 0; t < chunk_len; ++t) {
                // reduce the phase index exactly before converting to an angle
                const std::size_t k = (static_cast<std::size_t>(e) * node_index[t]) % grid;
                const cplx w = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                     static_cast<double>(grid));
                weighted[t] = w * resolvents[t];
            }
            chunk_sums[p].push_back(pairwise_sum(std::move(weighted)));
        }
    }
    std::vector<ComplexMatrix> out;
    out.reserve(powers.size());
    for (auto& sums : chunk_sums) out.push_back(pairwise_sum(std::move(sums)));
    return out;
}

struct Moments {
    std::vector<ComplexMatrix> values;  // (1/2 pi i) \oint (E - c)^p G dE for each requested p
    std::size_t nodes = 0;
    bool converged = false;
};

enum class Criterion { strength, matrix };

/**
 * Moments by the trapezoidal rule, doubling the node count. The first
 * comparison is between the even half and the full starting grid.
 */
Moments contour_moments(const ComplexMatrix& h0, const Contour& contour, std::span<const unsigned> powers,
                        double tolerance, std::size_t max_nodes, Criterion criterion,
                        const std::function<double(const ComplexMatrix&)>& strength) {
    ComplexMatrix shifted = h0;
    shifted.add_to_diagonal(-contour.center);

    std::size_t grid = contour.nodes;
    auto sums = node_sums(shifted, contour.radius, grid, 0, 2, powers);  // grid/2 nodes
    auto mean = [&](const std::vector<ComplexMatrix>& s, std::size_t n) {
        std::vector<ComplexMatrix> out;
        out.reserve(s.size());
        for (const auto& x : s) out.push_back((1.0 / static_cast<double>(n)) * x);
        return out;
    };
    std::vector<ComplexMatrix> previous = mean(sums, grid / 2);

    Moments result;
    double last_change = std::numeric_limits<double>::infinity();
    while (true) {
        auto odd = node_sums(shifted, contour.radius, grid, 1, 2, powers);
        for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += odd[p];
        std::vector<ComplexMatrix> current = mean(sums, grid);

        // largest relative change over the requested moments
        double change = 0.0;
        for (std::size_t p = 0; p < current.size(); ++p) {
            double diff, ref;
            if (criterion == Criterion::strength) {
                ref = strength(current[p]);
                diff = std::abs(ref - strength(previous[p]));
            } else {
                ref = frobenius_norm(current[p]);
                diff = frobenius_norm(current[p] - previous[p]);
            }
            change = std::max(change, diff == 0.0 ? 0.0 : diff / ref);
        }
        result.values = std::move(current);
        result.nodes = grid;
        // Stagnation below kNoiseFloor means the rule has converged and the
        // remaining change is rounding in the resolvent evaluations.
        const bool stalled = change <= kNoiseFloor && change > kStallRatio * last_change;
        if (change <= tolerance || stalled) {
            result.converged = true;
            return result;
        }
        if (2 * grid > max_nodes) return result;
        last_change = change;
        previous = result.values;
        grid *= 2;
        // the sums so far cover every node of the doubled grid with even index
    }
}

std::vector<std::size_t> foreign_indices(std::size_t m, const SpectralCluster& cluster) {
    std::vector<char> member(m, 0);
    for (auto i : cluster.member_indices) {
        if (i >= m) throw InputError("cluster member index out of range");
        member[i] = 1;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i)
        if (!member[i]) out.push_back(i);
    return out;
}

Contour default_contour_for(const ComplexMatrix& h0, std::span<const cplx> spectrum,
                            const SpectralCluster& cluster) {
    const cplx center = cluster.eigenvalue;
    double spread = 0.0;
    for (auto i : cluster.member_indices) spread = std::max(spread, std::abs(spectrum[i] - center));

    const auto foreign = foreign_indices(spectrum.size(), cluster);
    double radius;
    if (!foreign.empty()) {
        double dmin = std::numeric_limits<double>::infinity();
        for (auto i : foreign) dmin = std::min(dmin, std::abs(spectrum[i] - center));
        if (!(dmin > spread)) {
            throw ContourError("cluster at " + format_double(center.real()) + "+" +
                               format_double(center.imag()) + "i is not separated from a foreign eigenvalue");
        }
        radius = 0.5 * dmin;
        if (radius <= spread) radius = 0.5 * (spread + dmin);
    } else {
        ComplexMatrix n = h0;
        n.add_to_diagonal(-center);
        const std::size_t order = std::max<std::size_t>(1, cluster.order);
        std::vector<double> norms{1.0};
        ComplexMatrix power = ComplexMatrix::identity(h0.rows());
        for (std::size_t k = 1; k < order; ++k) {
            power = power * n;
            norms.push_back(spectral_norm(power));
        }
        radius = order >= 2 ? norms[1] : spectral_norm(n);
        if (order >= 2 && norms[order - 1] > 0.0) {
            // balance: r^{n-k} ||N^{k-1}|| <= ||N^{n-1}|| for every k
            radius = std::numeric_limits<double>::infinity();
            for (std::size_t k = 1; k < order; ++k) {
                radius = std::min(radius, std::pow(norms[order - 1] / norms[k - 1],
                                                   1.0 / static_cast<double>(order - k)));
            }
        }
        if (!(radius > 0.0)) radius = std::max(1.0, std::abs(center));
        radius = std::max(radius, 4.0 * spread);
    }
    return Contour{center, radius, 64};
}

void validate_contour_for(std::span<const cplx> spectrum, const SpectralCluster& cluster,
                          const Contour& contour) {
    if (!is_power_of_two(contour.nodes) || contour.nodes < 16) {
        throw ContourError("contour node count must be a power of two >= 16, got " +
                           std::to_string(contour.nodes));
    }
    if (!(contour.radius > 0.0) || !std::isfinite(contour.radius)) {
        throw ContourError("contour radius must be positive and finite");
    }
    std::vector<char> member(spectrum.size(), 0);
    for (auto i : cluster.member_indices) {
        if (i >= spectrum.size()) throw InputError("cluster member index out of range");
        member[i] = 1;
    }
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const bool inside = std::abs(spectrum[i] - contour.center) < contour.radius;
        if (inside != static_cast<bool>(member[i])) {
            throw ContourError(std::string("contour of radius ") + format_double(contour.radius) +
                               (member[i] ? " does not enclose member eigenvalue "
                                          : " encloses foreign eigenvalue ") +
                               format_double(spectrum[i].real()) + "+" + format_double(spectrum[i].imag()) +
                               "i");
        }
    }
}

double rank1_residual(const ComplexMatrix& w) {
    const auto sv = singular_values(w);
    if (sv.size() < 2 || sv[0] == 0.0) return 0.0;
    return sv[1] / sv[0];
}

double strength_of(const ComplexMatrix& w, std::size_t order) {
    return order >= 2 ? frobenius_norm(w) : spectral_norm(w);
}

std::size_t determine_order(const ComplexMatrix& h0, std::span<const cplx> spectrum, SpectralCluster cluster) {
    const std::size_t mult = cluster.algebraic_multiplicity;
    cluster.order = mult;
    const Contour contour = default_contour_for(h0, spectrum, cluster);
    const std::array<unsigned, 1> powers{0};
    const Moments mom = contour_moments(h0, contour, powers, kDecompositionTolerance, 4096,
                                        Criterion::matrix, {});
    ComplexMatrix n = h0;
    n.add_to_diagonal(-cluster.eigenvalue);
    n = n * mom.values[0];

    const double scale = std::max(frobenius_norm(h0), spectral_norm(n));
    if (scale == 0.0) return 1;
    std::vector<double> rho;
    ComplexMatrix power = n;
    for (std::size_t k = 1; k <= mult; ++k) {
        if (k > 1) power = power * n;
        rho.push_back(spectral_norm(power) / std::pow(scale, static_cast<double>(k)));
        if (rho.back() <= kRankThreshold) break;
    }
    const std::size_t order = rho.size();
    const auto where = [&] {
        return format_double(cluster.eigenvalue.real()) + "+" + format_double(cluster.eigenvalue.imag()) + "i";
    };
    if (rho.back() > kRankThreshold) {
        throw AmbiguousOrderError("cluster at " + where() + ": no power of the nilpotent part vanishes; "
                                  "declare the order explicitly");
    }
    const bool close_below = rho.back() > kRankThreshold / 10.0;
    const bool close_above = order >= 2 && rho[order - 2] < kRankThreshold * 10.0;
    if (close_below || close_above) {
        throw AmbiguousOrderError("cluster at " + where() + ": order test within one decade of the "
                                  "threshold; declare the order explicitly");
    }
    return order;
}

}  // namespace

double default_cluster_tolerance(const ComplexMatrix& h0) {
    return std::max(1e-10, 1e-8 * frobenius_norm(h0));
}

std::vector<SpectralCluster> cluster_spectrum(const ComplexMatrix& h0, const ClusterOptions& options) {
    if (!h0.is_square()) throw InputError("cluster_spectrum requires a square matrix");
    const std::size_t m = h0.rows();
    const auto pairs = eig(h0);
    std::vector<cplx> spectrum(m);
    std::vector<double> sqrt_k(m);
    for (std::size_t i = 0; i < m; ++i) {
        spectrum[i] = pairs[i].eigenvalue;
        const double overlap = std::abs(inner(pairs[i].left, pairs[i].right));
        sqrt_k[i] = overlap > 0.0 ? 1.0 / overlap : std::numeric_limits<double>::infinity();
    }
    const double s = frobenius_norm(h0);
    const double tol = options.tolerance.value_or(default_cluster_tolerance(h0));
    if (!(tol >= 0.0)) throw InputError("cluster tolerance must be nonnegative");
    const double cap = 10.0 * s * std::pow(kUnitRoundoff, 1.0 / static_cast<double>(m));

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double radius = tol;
            const double mk = std::min(sqrt_k[i], sqrt_k[j]);
            // sqrt(K) at the overlap floor means the pair is already computed as coincident
            if (mk < kOverlapFloorSqrtK) {
                radius = std::max(radius, std::min(kConditionMergeFactor * kUnitRoundoff * s * mk, cap));
            }
            if (std::abs(spectrum[i] - spectrum[j]) <= radius) {
                const std::size_t a = find(i), b = find(j);
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }

    std::vector<SpectralCluster> clusters;
    std::vector<std::size_t> slot(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t root = find(i);
        if (slot[root] == m) {
            slot[root] = clusters.size();
            clusters.push_back({});
        }
        clusters[slot[root]].member_indices.push_back(i);
    }
    for (auto& c : clusters) {
        cplx sum{};
        for (auto i : c.member_indices) sum += spectrum[i];
        c.algebraic_multiplicity = c.member_indices.size();
        c.eigenvalue = sum / static_cast<double>(c.algebraic_multiplicity);
    }

    std::optional<std::size_t> declared_target;
    if (options.declared_order && options.declared_near) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            const double d = std::abs(clusters[k].eigenvalue - *options.declared_near);
            if (d < best) {
                best = d;
                declared_target = k;
            }
        }
    }
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        auto& c = clusters[k];
        const bool declared = options.declared_order &&
                              (declared_target ? *declared_target == k : c.algebraic_multiplicity > 1);
        if (declared) {
            const std::size_t n = *options.declared_order;
            if (n < 1 || n > c.algebraic_multiplicity) {
                throw DomainError("declared order " + std::to_string(n) + " incompatible with multiplicity " +
                                  std::to_string(c.algebraic_multiplicity));
            }
            c.order = n;
        } else if (c.algebraic_multiplicity == 1) {
            c.order = 1;
        } else {
            c.order = determine_order(h0, spectrum, c);
        }
    }
    return clusters;
}

Contour default_contour(const ComplexMatrix& h0, const SpectralCluster& cluster) {
    const auto spectrum = eigenvalues(h0);
    return default_contour_for(h0, spectrum, cluster);
}

void validate_contour(const ComplexMatrix& h0, const SpectralCluster& cluster, const Contour& contour) {
    validate_contour_for(eigenvalues(h0), cluster, contour);
}

json to_json(const EpReport& report) {
    return json{{"eigenvalue", complex_to_json(report.cluster.eigenvalue)},
                {"order", report.cluster.order},
                {"multiplicity", report.cluster.algebraic_multiplicity},
                {"xi", report.strength},
                {"rank1_residual", report.rank1_residual},
                {"nodes", report.quadrature_nodes_used},
                {"converged", report.converged},
                {"W", matrix_to_json(report.w_operator)}};
}

EpReport xi_special(const ComplexMatrix& h0, cplx lambda_ep, std::size_t n) {
    if (!h0.is_square()) throw InputError("xi_special requires a square matrix");
    if (n < 1 || h0.rows() != n) {
        throw InputError("xi_special applies to an n x n matrix at an EP of order n (n = " + std::to_string(n) +
                         ", matrix is " + std::to_string(h0.rows()) + "x" + std::to_string(h0.cols()) + ")");
    }
    ComplexMatrix nil = h0;
    nil.add_to_diagonal(-lambda_ep);
    const double nil_norm = frobenius_norm(nil);

    EpReport report;
    report.cluster.eigenvalue = lambda_ep;
    report.cluster.algebraic_multiplicity = n;
    report.cluster.order = n;
    report.cluster.member_indices.resize(n);
    std::iota(report.cluster.member_indices.begin(), report.cluster.member_indices.end(), 0);

    if (n == 1) {
        // index 1: the matrix is lambda itself
        if (nil_norm > kNilpotencyTolerance * std::max(1.0, frobenius_norm(h0))) {
            throw NotAnEpError("h0 - lambda is not zero; a 1x1 cluster needs h0 = lambda");
        }
        report.w_operator = ComplexMatrix::identity(1);
        report.strength = 1.0;
        return report;
    }

    const ComplexMatrix w = matrix_power(nil, static_cast<unsigned>(n - 1));
    const ComplexMatrix top = w * nil;
    const double w_norm = frobenius_norm(w);
    const double scale = std::pow(nil_norm, static_cast<double>(n - 1));
    if (nil_norm == 0.0 || !(w_norm > kRankThreshold * scale)) {
        throw NotAnEpError("(h0 - lambda)^(n-1) vanishes: not an EP of order " + std::to_string(n) +
                           " (use xi_residue)");
    }
    if (frobenius_norm(top) > kNilpotencyTolerance * scale * nil_norm) {
        throw NotAnEpError("(h0 - lambda)^n does not vanish: h0 is not at an EP of order " + std::to_string(n) +
                           " with eigenvalue lambda (use xi_residue)");
    }
    report.w_operator = w;
    report.strength = w_norm;
    report.rank1_residual = rank1_residual(w);
    return report;
}

EpReport xi_residue(const ComplexMatrix& h0, const SpectralCluster& cluster, const Contour& contour,
                    const QuadratureOptions& quadrature) {
    if (!h0.is_square()) throw InputError("xi_residue requires a square matrix");
    if (cluster.order < 1 || cluster.order > cluster.algebraic_multiplicity) {
        throw InputError("cluster order must lie in [1, multiplicity]");
    }
    validate_contour_for(eigenvalues(h0), cluster, contour);

    const std::array<unsigned, 1> powers{static_cast<unsigned>(cluster.order - 1)};
    const std::size_t order = cluster.order;
    const Moments mom = contour_moments(h0, contour, powers, quadrature.tolerance,
                                        std::max(quadrature.max_nodes, contour.nodes), Criterion::strength,
                                        [order](const ComplexMatrix& w) { return strength_of(w, order); });

    EpReport report;
    report.cluster = cluster;
    report.w_operator = mom.values[0];
    report.strength = strength_of(report.w_operator, order);
    report.rank1_residual = rank1_residual(report.w_operator);
    report.quadrature_nodes_used = mom.nodes;
    report.converged = mom.converged;
    return report;
}

EpReport xi_residue(const ComplexMatrix& h0, const SpectralCluster& cluster) {
    return xi_residue(h0, cluster, default_contour(h0, cluster));
}

ComplexMatrix SpectralDecomposition::resolvent(cplx energy) const {
    if (projectors.empty()) throw InputError("empty decomposition");
    ComplexMatrix g(projectors.front().rows(), projectors.front().cols());
    for (std::size_t l = 0; l < clusters.size(); ++l) {
        const cplx inv = 1.0 / (energy - clusters[l].eigenvalue);
        cplx factor = inv;
        g += factor * projectors[l];
        for (const auto& nk : nilpotent_powers[l]) {
            factor *= inv;
            g += factor * nk;
        }
    }
    return g;
}

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h0, std::span<const SpectralCluster> clusters,
                                             std::span<const Contour> contours) {
    if (!h0.is_square()) throw InputError("spectral_decomposition requires a square matrix");
    if (clusters.size() != contours.size()) throw InputError("one contour per cluster is required");
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.algebraic_multiplicity;
    if (total != h0.rows()) {
        throw InputError("clusters must cover the whole spectrum (" + std::to_string(total) + " of " +
                         std::to_string(h0.rows()) + " eigenvalues)");
    }
    for (std::size_t i = 0; i < contours.size(); ++i) {
        for (std::size_t j = i + 1; j < contours.size(); ++j) {
            if (std::abs(contours[i].center - contours[j].center) < contours[i].radius + contours[j].radius) {
                throw ContourError("contours " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
            }
        }
    }
    const auto spectrum = eigenvalues(h0);

    SpectralDecomposition out;
    out.clusters.assign(clusters.begin(), clusters.end());
    for (std::size_t l = 0; l < clusters.size(); ++l) {
        validate_contour_for(spectrum, clusters[l], contours[l]);
        std::vector<unsigned> powers(clusters[l].order);
        std::iota(powers.begin(), powers.end(), 0u);
        Moments mom = contour_moments(h0, contours[l], powers, kDecompositionTolerance, 4096, Criterion::matrix, {});
        out.projectors.push_back(std::move(mom.values[0]));
        out.nilpotent_powers.emplace_back(std::make_move_iterator(mom.values.begin() + 1),
                                          std::make_move_iterator(mom.values.end()));
        out.converged.push_back(mom.converged);
    }
    return out;
}

SpectralDecomposition spectral_decomposition(const ComplexMatrix& h0) {
    const auto clusters = cluster_spectrum(h0);
    const auto spectrum = eigenvalues(h0);
    std::vector<Contour> contours;
    for (const auto& c : clusters) contours.push_back(default_contour_for(h0, spectrum, c));
    return spectral_decomposition(h0, clusters, contours);
}

double perturbation_genericity(const ComplexMatrix& w_operator, const ComplexMatrix& h1) {
    const double w2 = std::pow(frobenius_norm(w_operator), 2);
    const double h = spectral_norm(h1);
    if (w2 == 0.0 || h == 0.0) return 0.0;
    return frobenius_norm(w_operator * h1 * w_operator) / (w2 * h);
}

PassiveBound passive_bound_check(const EpReport& report, std::size_t n) {
    if (n < 1) throw InputError("EP order must be at least 1");
    const double base = std::sqrt(2.0 * static_cast<double>(n)) * std::abs(report.cluster.eigenvalue.imag());
    const double bound = std::pow(base, static_cast<double>(n - 1));
    return {bound, report.strength <= bound};
}

double splitting_bound(double xi, std::size_t n, double epsilon, double h1_norm) {
    if (n < 1) throw InputError("EP order must be at least 1");
    if (xi < 0.0 || epsilon < 0.0 || h1_norm < 0.0) throw InputError("splitting_bound inputs must be nonnegative");
    return std::pow(epsilon * h1_norm * xi, 1.0 / static_cast<double>(n));
}

ScanTable surface_scan(const std::function<ComplexMatrix(double)>& generator, std::vector<double> samples,
                       const SurfaceScanOptions& options) {
    if (options.order < 1) throw InputError("scan order must be at least 1");
    std::sort(samples.begin(), samples.end());
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> rows(samples.size());

    parallel_for(samples.size(), [&](std::size_t idx) {
        const double p = samples[idx];
        std::vector<double> row{p, nan, nan, nan, nan, 1.0};
        try {
            const ComplexMatrix h0 = generator(p);
            ClusterOptions copts;
            copts.tolerance = options.cluster_tolerance;
            if (options.ep_locator) {
                copts.declared_order = options.order;
                copts.declared_near = options.ep_locator(p);
            }
            const auto clusters = cluster_spectrum(h0, copts);
            const SpectralCluster* chosen = nullptr;
            if (options.ep_locator) {
                const cplx target = options.ep_locator(p);
                for (const auto& c : clusters) {
                    if (!chosen || std::abs(c.eigenvalue - target) < std::abs(chosen->eigenvalue - target)) chosen = &c;
                }
            } else {
                for (const auto& c : clusters) {
                    if (c.order == options.order) {
                        chosen = &c;
                        break;
                    }
                }
            }
            if (chosen == nullptr || chosen->order != options.order) {
                rows[idx] = row;
                return;
            }
            const auto spectrum = eigenvalues(h0);
            Contour contour = default_contour_for(h0, spectrum, *chosen);
            if (options.contour_radius) contour.radius = *options.contour_radius;
            const EpReport rep = xi_residue(h0, *chosen, contour);

            double foreign = std::numeric_limits<double>::infinity();
            for (auto i : foreign_indices(spectrum.size(), *chosen))
                foreign = std::min(foreign, std::abs(spectrum[i] - chosen->eigenvalue));
            row = {p, rep.strength, chosen->eigenvalue.real(), chosen->eigenvalue.imag(), foreign,
                   rep.converged ? 0.0 : 1.0};
        } catch (const Error&) {
            // row stays flagged
        }
        rows[idx] = row;
    });

    ScanTable table({"parameter", "xi", "lambda_re", "lambda_im", "foreign_distance", "flagged"});
    for (auto& r : rows) table.add_row(std::move(r));
    return table;
}

}  // namespace epsrs
