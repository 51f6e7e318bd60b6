#include "epsrs/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epsrs/errors.hpp"

namespace epsrs {

namespace {

constexpr double kEp4Tolerance = 1e-6;

cplx field(const json& j, const char* name, cplx fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return complex_from_json(j.at(name));
    } catch (const InputError& e) {
        throw InputError(std::string("field '") + name + "': " + e.what());
    }
}

double chirality_scale(const ChiralityModelParams& p) {
    return std::max({1.0, std::abs(p.omega_is), std::abs(p.omega_ch), std::abs(p.v)});
}

void require_b_zero(const ChiralityModelParams& p) {
    if (p.b != cplx{}) throw DomainError("closed-form strengths of the chirality model require b = 0");
}

}  // namespace

void validate(const ToyModelParams& p) {
    if (p.a == cplx{}) throw DomainError("toy model requires a != 0");
    if (p.b == cplx{} && !p.degenerate) throw DomainError("toy model requires b != 0 unless degenerate is set");
    for (cplx z : {p.e_a, p.e_b, p.a, p.b}) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("toy parameters must be finite");
    }
}

ComplexMatrix toy_h0(const ToyModelParams& p) {
    validate(p);
    return ComplexMatrix::from_rows({{p.e_b, p.b, 0.0}, {0.0, p.e_a, p.a}, {0.0, 0.0, p.e_a}});
}

ComplexMatrix toy_h1() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {s, s, 0.0}});
}

double toy_xi2(const ToyModelParams& p) {
    validate(p);
    const double d = std::abs(p.e_b - p.e_a);
    if (d == 0.0) throw DomainError("toy_xi2 is undefined at zero detuning; use toy_xi3");
    const double ratio = std::abs(p.b) / d;
    return std::abs(p.a) * std::sqrt(1.0 + ratio * ratio);
}

double toy_xi3(const ToyModelParams& p) {
    validate(p);
    if (p.degenerate && p.b == cplx{}) return std::abs(p.a);
    return std::abs(p.a) * std::abs(p.b);
}

ComplexMatrix chirality_h0(const ChiralityModelParams& p) {
    return ComplexMatrix::from_rows({{p.omega_is, p.v, 0.0, 0.0},
                                     {p.v, p.omega_ch, p.a, 0.0},
                                     {0.0, p.b, p.omega_ch, p.v},
                                     {0.0, 0.0, p.v, p.omega_is}});
}

std::array<cplx, 4> chirality_eigenvalues(const ChiralityModelParams& p) {
    const cplx root_ab = std::sqrt(p.a * p.b);
    std::array<cplx, 4> out;
    std::size_t k = 0;
    for (double sigma : {1.0, -1.0}) {
        const cplx mid = 0.5 * (p.omega_is + p.omega_ch + sigma * root_ab);
        const cplx half = 0.5 * (p.omega_is - p.omega_ch - sigma * root_ab);
        const cplx s = std::sqrt(p.v * p.v + half * half);
        out[k++] = mid + s;
        out[k++] = mid - s;
    }
    return out;
}

cplx chirality_omega(const ChiralityModelParams& p, Branch branch) {
    const auto ev = chirality_eigenvalues(ChiralityModelParams{p.omega_is, p.omega_ch, p.v, p.a, 0.0});
    return branch == Branch::plus ? ev[0] : ev[1];
}

double chirality_xi2(const ChiralityModelParams& p, Branch branch) {
    require_b_zero(p);
    const Branch other = branch == Branch::plus ? Branch::minus : Branch::plus;
    const cplx mine = chirality_omega(p, branch);
    const cplx theirs = chirality_omega(p, other);
    const double gap = std::abs(theirs - mine);
    if (gap == 0.0) throw DomainError("the two EP2 branches coincide (EP4); use chirality_xi4");
    return std::abs(p.a) * (std::norm(p.v) + std::norm(mine - p.omega_is)) / (gap * gap);
}

double chirality_xi4(const ChiralityModelParams& p) {
    require_b_zero(p);
    const double gap = std::abs(chirality_omega(p, Branch::plus) - chirality_omega(p, Branch::minus));
    if (gap > kEp4Tolerance * chirality_scale(p)) {
        throw DomainError("parameters are not at the EP4 (branch gap " + std::to_string(gap) + ")");
    }
    return std::abs(p.a) * (std::norm(p.v) + std::norm(0.5 * (p.omega_ch - p.omega_is)));
}

ToyModelParams toy_params_from_json(const json& j) {
    if (!j.is_object()) throw InputError("toy parameters must be a JSON object");
    ToyModelParams p;
    p.e_a = field(j, "e_a", p.e_a);
    p.e_b = field(j, "e_b", p.e_b);
    p.a = field(j, "a", p.a);
    p.b = field(j, "b", p.b);
    if (j.contains("degenerate")) {
        if (!j["degenerate"].is_boolean()) throw InputError("field 'degenerate' must be a boolean");
        p.degenerate = j["degenerate"].get<bool>();
    }
    validate(p);
    return p;
}

ChiralityModelParams chirality_params_from_json(const json& j) {
    if (!j.is_object()) throw InputError("chirality parameters must be a JSON object");
    ChiralityModelParams p;
    p.omega_is = field(j, "omega_is", p.omega_is);
    p.omega_ch = field(j, "omega_ch", p.omega_ch);
    p.v = field(j, "v", p.v);
    p.a = field(j, "a", p.a);
    p.b = field(j, "b", p.b);
    return p;
}

json to_json(const ToyModelParams& p) {
    return json{{"e_a", complex_to_json(p.e_a)}, {"e_b", complex_to_json(p.e_b)}, {"a", complex_to_json(p.a)},
                {"b", complex_to_json(p.b)},     {"degenerate", p.degenerate}};
}

json to_json(const ChiralityModelParams& p) {
    return json{{"omega_is", complex_to_json(p.omega_is)}, {"omega_ch", complex_to_json(p.omega_ch)},
                {"v", complex_to_json(p.v)}, {"a", complex_to_json(p.a)}, {"b", complex_to_json(p.b)}};
}

}  // namespace epsrs
