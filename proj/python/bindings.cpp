#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epsrs/ep_core.hpp"
#include "epsrs/errors.hpp"
#include "epsrs/experiments.hpp"
#include "epsrs/greens.hpp"
#include "epsrs/linalg.hpp"
#include "epsrs/models.hpp"
#include "epsrs/petermann.hpp"

namespace py = pybind11;
using namespace epsrs;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2) throw InputError("expected a 2-d array");
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto c = static_cast<std::size_t>(a.shape(1));
    return ComplexMatrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

CArray to_array(const ComplexMatrix& m) {
    CArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

py::dict to_dict(const ScanTable& t) {
    py::dict d;
    for (const auto& name : t.columns()) d[py::str(name)] = py::array(py::cast(t.column(name)));
    return d;
}

py::dict report_dict(const EpReport& r) {
    py::dict d;
    d["eigenvalue"] = r.cluster.eigenvalue;
    d["order"] = r.cluster.order;
    d["multiplicity"] = r.cluster.algebraic_multiplicity;
    d["xi"] = r.strength;
    d["W"] = to_array(r.w_operator);
    d["rank1_residual"] = r.rank1_residual;
    d["nodes"] = r.quadrature_nodes_used;
    d["converged"] = r.converged;
    return d;
}

ClusterOptions cluster_options(std::optional<std::size_t> order, std::optional<cplx> near,
                               std::optional<double> tolerance) {
    ClusterOptions o;
    o.declared_order = order;
    o.declared_near = near;
    o.tolerance = tolerance;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral response strength of exceptional points";

    auto base = py::register_exception<Error>(m, "Error");
    auto input = py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", input.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", numerical.ptr());
    py::register_exception<AmbiguousOrderError>(m, "AmbiguousOrderError", numerical.ptr());
    py::register_exception<NotAnEpError>(m, "NotAnEpError", numerical.ptr());
    py::register_exception<AtEpError>(m, "AtEpError", numerical.ptr());
    py::register_exception<ContourError>(m, "ContourError", numerical.ptr());
    py::register_exception<SeparationError>(m, "SeparationError", numerical.ptr());
    py::register_exception<BracketError>(m, "BracketError", numerical.ptr());

    m.def("eigenvalues", [](const CArray& h) { return eigenvalues(to_matrix(h)); }, py::arg("h0"));
    m.def("spectral_norm", [](const CArray& h) { return spectral_norm(to_matrix(h)); }, py::arg("a"));
    m.def("greens_function", [](const CArray& h, cplx e) { return to_array(greens_function(to_matrix(h), e)); },
          py::arg("h0"), py::arg("energy"));

    m.def(
        "clusters",
        [](const CArray& h, std::optional<std::size_t> order, std::optional<cplx> near,
           std::optional<double> tolerance) {
            py::list out;
            for (const auto& c : cluster_spectrum(to_matrix(h), cluster_options(order, near, tolerance))) {
                py::dict d;
                d["eigenvalue"] = c.eigenvalue;
                d["multiplicity"] = c.algebraic_multiplicity;
                d["order"] = c.order;
                out.append(d);
            }
            return out;
        },
        py::arg("h0"), py::arg("order") = py::none(), py::arg("near") = py::none(),
        py::arg("tolerance") = py::none());

    m.def(
        "xi",
        [](const CArray& h, cplx near, std::optional<std::size_t> order, std::optional<double> radius,
           std::size_t nodes) {
            const auto h0 = to_matrix(h);
            const auto cs = cluster_spectrum(h0, cluster_options(order, near, std::nullopt));
            const auto* best = &cs.front();
            for (const auto& c : cs)
                if (std::abs(c.eigenvalue - near) < std::abs(best->eigenvalue - near)) best = &c;
            Contour contour = default_contour(h0, *best);
            if (radius) contour.radius = *radius;
            contour.nodes = nodes;
            return report_dict(xi_residue(h0, *best, contour));
        },
        py::arg("h0"), py::arg("near"), py::arg("order") = py::none(), py::arg("radius") = py::none(),
        py::arg("nodes") = 64, "Spectral response strength of the cluster nearest `near`.");

    m.def(
        "xi_special",
        [](const CArray& h, cplx lambda, std::size_t n) { return report_dict(xi_special(to_matrix(h), lambda, n)); },
        py::arg("h0"), py::arg("lambda_ep"), py::arg("n"));

    m.def("splitting_bound", &splitting_bound, py::arg("xi"), py::arg("n"), py::arg("epsilon"),
          py::arg("h1_norm") = 1.0);

    m.def(
        "petermann_factors",
        [](const CArray& h) {
            std::vector<std::pair<cplx, double>> out;
            for (const auto& r : petermann_records(to_matrix(h))) out.emplace_back(r.eigen.eigenvalue, r.factor);
            return out;
        },
        py::arg("h0"));

    m.def(
        "xi_via_petermann",
        [](const CArray& h, cplx lambda, std::size_t n, double eta, std::uint64_t seed) {
            return xi_via_petermann(to_matrix(h), lambda, n, eta, seed).xi;
        },
        py::arg("h0"), py::arg("lambda_ep"), py::arg("n"), py::arg("eta"), py::arg("seed") = 20240917);

    m.def(
        "toy_h0",
        [](cplx e_a, cplx e_b, cplx a, cplx b, bool degenerate) {
            return to_array(toy_h0(ToyModelParams{e_a, e_b, a, b, degenerate}));
        },
        py::arg("e_a"), py::arg("e_b"), py::arg("a") = -1.0, py::arg("b") = -1.0, py::arg("degenerate") = false);
    m.def("toy_h1", [] { return to_array(toy_h1()); });
    m.def(
        "chirality_h0",
        [](cplx omega_is, cplx omega_ch, cplx v, cplx a, cplx b) {
            return to_array(chirality_h0(ChiralityModelParams{omega_is, omega_ch, v, a, b}));
        },
        py::arg("omega_is"), py::arg("omega_ch"), py::arg("v"), py::arg("a"), py::arg("b") = 0.0);

    m.def(
        "fig2",
        [](double lo, double hi, std::size_t per_decade, double eps) {
            Fig2Options o;
            o.detuning_lo = lo;
            o.detuning_hi = hi;
            o.per_decade = per_decade;
            o.epsilon = eps;
            return to_dict(fig2_table(o));
        },
        py::arg("lo") = 1e-4, py::arg("hi") = 1.0, py::arg("per_decade") = 25, py::arg("epsilon") = 1e-8);
    m.def(
        "fig5",
        [](std::optional<std::size_t> points, double eta, std::uint64_t seed) {
            Fig5Options o;
            o.points = points;
            o.eta = eta;
            o.seed = seed;
            return to_dict(fig5_table(o));
        },
        py::arg("points") = py::none(), py::arg("eta") = 1e-21, py::arg("seed") = 20240917);
    m.def(
        "toy_surface_scan",
        [](double lo, double hi, std::size_t per_decade) {
            ToyScanOptions o;
            o.detuning_lo = lo;
            o.detuning_hi = hi;
            o.per_decade = per_decade;
            return to_dict(toy_surface_scan(o));
        },
        py::arg("lo") = 1e-4, py::arg("hi") = 1e-2, py::arg("per_decade") = 25);
}
