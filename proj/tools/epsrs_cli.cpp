// epsrs: command-line front end.
//
// Exit codes: 0 success, 1 malformed input or usage, 2 numerical failure or
// non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "epsrs/ep_core.hpp"
#include "epsrs/errors.hpp"
#include "epsrs/experiments.hpp"
#include "epsrs/greens.hpp"
#include "epsrs/json_io.hpp"
#include "epsrs/linalg.hpp"
#include "epsrs/models.hpp"
#include "epsrs/petermann.hpp"

namespace {

using namespace epsrs;

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Globals {
    std::string matrix;
    std::string out;
    std::uint64_t seed = 20240917;
    std::optional<double> rc;
    std::optional<std::size_t> nodes;
    std::optional<double> tol_cluster;
    std::optional<std::size_t> order;
};

// Either a matrix JSON or {"model": "toy" | "chirality", "params": {...}}.
ComplexMatrix load_hamiltonian(const std::string& path) {
    if (path.empty()) throw InputError("--matrix is required");
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    if (j.is_object() && j.contains("model")) {
        if (!j["model"].is_string()) throw InputError("'model' must be a string");
        const std::string name = j["model"].get<std::string>();
        const json params = j.value("params", json::object());
        if (name == "toy") return toy_h0(toy_params_from_json(params));
        if (name == "chirality") return chirality_h0(chirality_params_from_json(params));
        throw InputError("unknown model '" + name + "'");
    }
    return matrix_from_json(j);
}

cplx parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    in >> re;
    if (!in) throw InputError("cannot parse complex value '" + text + "' (expected re,im)");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw InputError("cannot parse complex value '" + text + "'");
    }
    return {re, im};
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + g.out);
    f << text;
}

ClusterOptions cluster_options(const Globals& g, std::optional<cplx> near) {
    ClusterOptions o;
    o.tolerance = g.tol_cluster;
    o.declared_order = g.order;
    if (g.order && near) o.declared_near = near;
    return o;
}

Contour contour_for(const ComplexMatrix& h0, const SpectralCluster& c, const Globals& g) {
    Contour contour = default_contour(h0, c);
    if (g.rc) contour.radius = *g.rc;
    if (g.nodes) contour.nodes = *g.nodes;
    return contour;
}

int cmd_srs(const Globals& g, const std::string& near_text, std::optional<std::size_t> index) {
    const ComplexMatrix h0 = load_hamiltonian(g.matrix);
    std::optional<cplx> near;
    if (!near_text.empty()) near = parse_complex(near_text);
    const auto clusters = cluster_spectrum(h0, cluster_options(g, near));

    std::vector<const SpectralCluster*> chosen;
    if (near) {
        const SpectralCluster* best = nullptr;
        for (const auto& c : clusters) {
            if (!best || std::abs(c.eigenvalue - *near) < std::abs(best->eigenvalue - *near)) best = &c;
        }
        chosen.push_back(best);
    } else if (index) {
        if (*index >= clusters.size()) {
            throw InputError("cluster index " + std::to_string(*index) + " out of range (" +
                             std::to_string(clusters.size()) + " clusters)");
        }
        chosen.push_back(&clusters[*index]);
    } else {
        for (const auto& c : clusters) chosen.push_back(&c);
    }

    json out = json::array();
    bool converged = true;
    for (const auto* c : chosen) {
        const EpReport r = xi_residue(h0, *c, contour_for(h0, *c, g));
        converged = converged && r.converged;
        out.push_back(to_json(r));
    }
    emit(g, (chosen.size() == 1 && (near || index) ? out[0] : out).dump(2) + "\n");
    if (!converged) {
        std::cerr << "epsrs: quadrature did not converge within the node cap\n";
        return kExitNumerical;
    }
    return 0;
}

int cmd_decompose(const Globals& g) {
    const ComplexMatrix h0 = load_hamiltonian(g.matrix);
    const auto clusters = cluster_spectrum(h0, cluster_options(g, std::nullopt));
    std::vector<Contour> contours;
    for (const auto& c : clusters) contours.push_back(contour_for(h0, c, g));
    const auto d = spectral_decomposition(h0, clusters, contours);

    json out = json::array();
    bool converged = true;
    for (std::size_t l = 0; l < d.clusters.size(); ++l) {
        json powers = json::array();
        for (const auto& nk : d.nilpotent_powers[l]) powers.push_back(matrix_to_json(nk));
        out.push_back({{"eigenvalue", complex_to_json(d.clusters[l].eigenvalue)},
                       {"multiplicity", d.clusters[l].algebraic_multiplicity},
                       {"order", d.clusters[l].order},
                       {"converged", static_cast<bool>(d.converged[l])},
                       {"P", matrix_to_json(d.projectors[l])},
                       {"N", powers}});
        converged = converged && d.converged[l];
    }
    emit(g, out.dump(2) + "\n");
    return converged ? 0 : kExitNumerical;
}

int cmd_petermann(const Globals& g) {
    const ComplexMatrix h0 = load_hamiltonian(g.matrix);
    emit(g, petermann_table(petermann_records(h0)).to_csv());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral response strength of exceptional points"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--matrix", g.matrix, "Hamiltonian JSON (matrix or model description)");
    app.add_option("--out", g.out, "Output path (default: standard output)");
    app.add_option("--seed", g.seed, "Seed for random perturbations");
    app.add_option("--rc", g.rc, "Contour radius")->check(CLI::PositiveNumber);
    app.add_option("--nodes", g.nodes, "Starting quadrature nodes (power of two >= 16)");
    app.add_option("--tol-cluster", g.tol_cluster, "Eigenvalue clustering tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--order", g.order, "Declared EP order")->check(CLI::PositiveNumber);

    auto* srs = app.add_subcommand("srs", "Spectral response strength of one or all clusters");
    std::string near;
    std::optional<std::size_t> cluster_index;
    auto* near_opt = srs->add_option("--near", near, "Select the cluster nearest re,im");
    srs->add_option("--cluster", cluster_index, "Select a cluster by index")->excludes(near_opt);

    auto* fig2 = app.add_subcommand("fig2", "Splitting and bounds vs detuning (toy model)");
    Fig2Options f2;
    fig2->add_option("--lo", f2.detuning_lo, "Smallest detuning");
    fig2->add_option("--hi", f2.detuning_hi, "Largest detuning");
    fig2->add_option("--eps", f2.epsilon, "Perturbation strength");
    fig2->add_option("--per-decade", f2.per_decade, "Samples per decade");

    auto* fig3 = app.add_subcommand("fig3", "Splitting and bounds vs perturbation strength");
    Fig3Options f3;
    fig3->add_option("--lo", f3.epsilon_lo, "Smallest epsilon");
    fig3->add_option("--hi", f3.epsilon_hi, "Largest epsilon");
    fig3->add_option("--detuning", f3.detuning, "Detuning e_b - e_a");
    fig3->add_option("--per-decade", f3.per_decade, "Samples per decade");

    auto* fig4 = app.add_subcommand("fig4", "Pseudospectrum grid and separatrix level");
    Fig4Options f4;
    std::vector<double> re_window, im_window;
    fig4->add_option("--detuning", f4.detuning, "Detuning e_b - e_a");
    fig4->add_option("--resolution", f4.resolution, "Grid points per axis")->check(CLI::Range(3, 4001));
    fig4->add_option("--re", re_window, "Real window lo hi")->expected(2);
    fig4->add_option("--im", im_window, "Imaginary window lo hi")->expected(2);
    std::string sidecar;
    fig4->add_option("--sidecar", sidecar, "Separatrix JSON path (default: <out>.json, or stderr)");

    auto* fig5 = app.add_subcommand("fig5", "Residue vs Petermann accuracy along the detuning");
    Fig5Options f5;
    std::optional<std::size_t> points;
    fig5->add_option("--lo", f5.detuning_lo, "Smallest detuning");
    fig5->add_option("--hi", f5.detuning_hi, "Largest detuning");
    fig5->add_option("--points", points, "Number of samples (overrides --per-decade)");
    fig5->add_option("--per-decade", f5.per_decade, "Samples per decade");
    fig5->add_option("--eta", f5.eta, "Random perturbation size");

    auto* scan = app.add_subcommand("scan-surface", "xi along an exceptional surface");
    std::string model = "toy";
    double scan_lo = 0.0, scan_hi = 0.0;
    std::size_t scan_per_decade = 25;
    scan->add_option("--model", model, "toy or chirality")->check(CLI::IsMember({"toy", "chirality"}));
    scan->add_option("--lo", scan_lo, "Smallest detuning / branch gap");
    scan->add_option("--hi", scan_hi, "Largest detuning / branch gap");
    scan->add_option("--per-decade", scan_per_decade, "Samples per decade");

    app.add_subcommand("petermann", "Petermann factors of every eigenstate");
    app.add_subcommand("decompose", "Spectral projectors and nilpotent parts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (srs->parsed()) return cmd_srs(g, near, cluster_index);
        if (app.got_subcommand("decompose")) return cmd_decompose(g);
        if (app.got_subcommand("petermann")) return cmd_petermann(g);
        if (fig2->parsed()) {
            emit(g, fig2_table(f2).to_csv());
        } else if (fig3->parsed()) {
            emit(g, fig3_table(f3).to_csv());
        } else if (fig4->parsed()) {
            if (!re_window.empty()) f4.re = AxisRange{re_window[0], re_window[1]};
            if (!im_window.empty()) f4.im = AxisRange{im_window[0], im_window[1]};
            const Fig4Result r = fig4_run(f4);
            std::ostringstream grid;
            write_grid_csv(grid, r.grid);
            emit(g, grid.str());
            const std::string side = json{{"separatrix_c", r.separatrix_c}}.dump() + "\n";
            const std::string side_path = !sidecar.empty() ? sidecar : (g.out.empty() ? "" : g.out + ".json");
            if (side_path.empty()) {
                std::cerr << side;
            } else {
                std::ofstream f(side_path, std::ios::binary);
                if (!f) throw InputError("cannot write " + side_path);
                f << side;
            }
        } else if (fig5->parsed()) {
            f5.points = points;
            f5.seed = g.seed;
            if (g.rc) f5.contour_radius = *g.rc;
            if (g.nodes) f5.nodes = *g.nodes;
            emit(g, fig5_table(f5).to_csv());
        } else if (scan->parsed()) {
            if (model == "toy") {
                ToyScanOptions o;
                if (scan_lo > 0.0) o.detuning_lo = scan_lo;
                if (scan_hi > 0.0) o.detuning_hi = scan_hi;
                o.per_decade = scan_per_decade;
                o.contour_radius = g.rc;
                emit(g, toy_surface_scan(o).to_csv());
            } else {
                ChiralityScanOptions o;
                if (scan_lo > 0.0) o.gap_lo = scan_lo;
                if (scan_hi > 0.0) o.gap_hi = scan_hi;
                o.per_decade = scan_per_decade;
                o.contour_radius = g.rc;
                emit(g, chirality_surface_scan(o).to_csv());
            }
        }
        return 0;
    } catch (const InputError& e) {
        std::cerr << "epsrs: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "epsrs: " << e.what() << '\n';
        return kExitNumerical;
    }
}
