#include "epsrs/experiments.hpp"

#include <cmath>
#include <limits>

#include "epsrs/ep_core.hpp"
#include "epsrs/errors.hpp"
#include "epsrs/linalg.hpp"
#include "epsrs/parallel.hpp"
#include "epsrs/petermann.hpp"

namespace epsrs {

namespace {

void require_positive_range(double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
        throw InputError(std::string(what) + " range must satisfy 0 < lo <= hi");
    }
}

ScanTable with_compensated(const ScanTable& scan, double power) {
    auto columns = scan.columns();
    columns.push_back("compensated");
    ScanTable out(columns);
    const std::size_t xi = scan.column_index("xi");
    for (auto row : scan.rows()) {
        row.push_back(row[xi] * std::pow(row[0], power));
        out.add_row(std::move(row));
    }
    return out;
}

}  // namespace

std::vector<double> log_space(double lo, double hi, std::size_t per_decade) {
    require_positive_range(lo, hi, "sampling");
    if (per_decade == 0) throw InputError("per_decade must be positive");
    const double decades = std::log10(hi / lo);
    const auto intervals = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade) - 1e-9));
    return log_space_count(lo, hi, std::max<std::size_t>(intervals, 1) + 1);
}

std::vector<double> log_space_count(double lo, double hi, std::size_t count) {
    require_positive_range(lo, hi, "sampling");
    if (count < 2) {
        if (count == 1 && lo == hi) return {lo};
        throw InputError("log_space_count needs at least 2 points");
    }
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

ToyModelParams toy_at_detuning(double detuning, cplx a, cplx b) {
    return ToyModelParams{0.0, detuning, a, b, false};
}

double toy_splitting(const ToyModelParams& p, double epsilon) {
    ComplexMatrix h = toy_h0(p);
    h += epsilon * toy_h1();
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& e : eigenvalues(h)) best = std::min(best, std::abs(e - p.e_a));
    return best;
}

ScanTable fig2_table(const Fig2Options& o) {
    if (!(o.epsilon > 0.0)) throw InputError("epsilon must be positive");
    std::vector<double> detunings{0.0};
    for (double d : log_space(o.detuning_lo, o.detuning_hi, o.per_decade)) detunings.push_back(d);

    std::vector<std::vector<double>> rows(detunings.size());
    parallel_for(detunings.size(), [&](std::size_t i) {
        const double d = detunings[i];
        const ToyModelParams p = toy_at_detuning(d, o.a, o.b);
        const double ep2 = d == 0.0 ? std::numeric_limits<double>::infinity()
                                    : splitting_bound(toy_xi2(p), 2, o.epsilon, 1.0);
        const double ep3 = splitting_bound(toy_xi3(p), 3, o.epsilon, 1.0);
        rows[i] = {d, toy_splitting(p, o.epsilon), ep2, ep3};
    });
    ScanTable t({"detuning", "splitting", "bound_ep2", "bound_ep3"});
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

ScanTable fig3_table(const Fig3Options& o) {
    if (!(o.detuning > 0.0)) throw InputError("detuning must be positive");
    const auto eps = log_space(o.epsilon_lo, o.epsilon_hi, o.per_decade);
    const ToyModelParams p = toy_at_detuning(o.detuning, o.a, o.b);
    const double xi2 = toy_xi2(p);
    const double xi3 = toy_xi3(p);

    std::vector<std::vector<double>> rows(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) {
        rows[i] = {eps[i], toy_splitting(p, eps[i]), splitting_bound(xi2, 2, eps[i], 1.0),
                   splitting_bound(xi3, 3, eps[i], 1.0)};
    });
    ScanTable t({"epsilon", "splitting", "bound_ep2", "bound_ep3"});
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

Fig4Result fig4_run(const Fig4Options& o) {
    if (!(o.detuning > 0.0)) throw InputError("detuning must be positive");
    const ToyModelParams p = toy_at_detuning(o.detuning, o.a, o.b);
    const ComplexMatrix h0 = toy_h0(p);
    const double half = 1.25 * o.detuning;
    const double mid = 0.5 * o.detuning;

    SeparatrixOptions s;
    s.re = o.re.value_or(AxisRange{mid - half, mid + half});
    s.im = o.im.value_or(AxisRange{-half, half});
    s.resolution = o.resolution;

    Fig4Result out;
    out.grid = pseudospectrum(h0, s.re, s.im, o.resolution, o.resolution);
    out.separatrix_c = separatrix_level(h0, p.e_a, p.e_b, s);
    return out;
}

ScanTable fig5_table(const Fig5Options& o) {
    if (!(o.contour_radius > 0.0)) throw InputError("contour radius must be positive");
    if (!(o.eta > 0.0)) throw InputError("eta must be positive");
    const auto detunings = o.points ? log_space_count(o.detuning_lo, o.detuning_hi, *o.points)
                                    : log_space(o.detuning_lo, o.detuning_hi, o.per_decade);
    ScanTable t({"detuning", "err_residue", "err_petermann"});
    for (double d : detunings) {
        const ToyModelParams p = toy_at_detuning(d, o.a, o.b);
        const ComplexMatrix h0 = toy_h0(p);
        const double exact = toy_xi2(p);

        ClusterOptions copts;
        copts.declared_order = 2;
        copts.declared_near = p.e_a;
        SpectralCluster ep;
        for (const auto& c : cluster_spectrum(h0, copts)) {
            if (c.order == 2) ep = c;
        }
        if (ep.order != 2) throw NumericalError("EP2 cluster not found at detuning " + format_double(d));
        const Contour contour{ep.eigenvalue, o.contour_radius, o.nodes};
        const double residue = xi_residue(h0, ep, contour).strength;
        const double peter = xi_via_petermann(h0, p.e_a, 2, o.eta, o.seed).xi;
        t.add_row({d, std::abs(residue - exact) / exact, std::abs(peter - exact) / exact});
    }
    return t;
}

ScanTable toy_surface_scan(const ToyScanOptions& o) {
    SurfaceScanOptions s;
    s.order = 2;
    s.ep_locator = [](double) { return cplx{0.0}; };
    s.contour_radius = o.contour_radius;
    const auto scan = surface_scan([&](double d) { return toy_h0(toy_at_detuning(d, o.a, o.b)); },
                                   log_space(o.detuning_lo, o.detuning_hi, o.per_decade), s);
    return with_compensated(scan, 1.0);
}

ChiralityModelParams chirality_at_gap(const ChiralityScanOptions& o, double gap) {
    const cplx half_d = 0.5 * (o.omega_is - o.omega_ch);
    const cplx half_gap = std::polar(0.5 * gap, o.phase);
    return ChiralityModelParams{o.omega_is, o.omega_ch, std::sqrt(half_gap * half_gap - half_d * half_d), o.a, 0.0};
}

ScanTable chirality_surface_scan(const ChiralityScanOptions& o) {
    if (o.a == cplx{}) throw DomainError("chirality scan requires a != 0");
    SurfaceScanOptions s;
    s.order = 2;
    s.ep_locator = [&](double gap) { return chirality_omega(chirality_at_gap(o, gap), Branch::plus); };
    s.contour_radius = o.contour_radius;
    const auto scan = surface_scan([&](double gap) { return chirality_h0(chirality_at_gap(o, gap)); },
                                   log_space(o.gap_lo, o.gap_hi, o.per_decade), s);
    return with_compensated(scan, 2.0);
}

}  // namespace epsrs
