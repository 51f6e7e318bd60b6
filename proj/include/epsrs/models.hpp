#pragma once

#include <array>

#include "epsrs/json_io.hpp"
#include "epsrs/matrix.hpp"

namespace epsrs {

/// Three-level toy model: an EP2 at e_a next to a state at e_b, merging into an
/// EP3 when e_a = e_b.
struct ToyModelParams {
    cplx e_a{0.0};
    cplx e_b{0.0};
    cplx a{-1.0};
    cplx b{-1.0};
    /// Allows b = 0 (the EP2-only end case at zero detuning).
    bool degenerate = false;
};

/// Throws DomainError if a = 0, or b = 0 without the degenerate flag.
void validate(const ToyModelParams& p);

/// [[e_b, b, 0], [0, e_a, a], [0, 0, e_a]]
ComplexMatrix toy_h0(const ToyModelParams& p);

/// Generic perturbation with bottom row (1, 1, 0) / sqrt(2); unit spectral norm.
ComplexMatrix toy_h1();

/// |a| sqrt(1 + |b|^2 / |e_b - e_a|^2). DomainError at zero detuning.
double toy_xi2(const ToyModelParams& p);

/// |a||b|, or |a| in degenerate mode.
double toy_xi3(const ToyModelParams& p);

/// Four-level chirality model.
struct ChiralityModelParams {
    cplx omega_is{0.0};
    cplx omega_ch{0.0};
    cplx v{0.0};
    cplx a{0.0};
    cplx b{0.0};
};

/// [[omega_is, v, 0, 0], [v, omega_ch, a, 0], [0, b, omega_ch, v], [0, 0, v, omega_is]]
ComplexMatrix chirality_h0(const ChiralityModelParams& p);

/// Closed-form eigenvalues in the order (+,+), (-,+), (+,-), (-,-), where the
/// first sign is the outer square-root branch and the second is sigma. With
/// b = 0 the list is Omega_+, Omega_-, Omega_+, Omega_-.
std::array<cplx, 4> chirality_eigenvalues(const ChiralityModelParams& p);

enum class Branch { plus, minus };

/// Omega_+ or Omega_- for b = 0 (principal square root for the + branch).
cplx chirality_omega(const ChiralityModelParams& p, Branch branch);

/// |a| (|v|^2 + |Omega_s - omega_is|^2) / |Omega_-s - Omega_s|^2 for b = 0.
/// DomainError if b != 0 or the two branches coincide.
double chirality_xi2(const ChiralityModelParams& p, Branch branch);

/// |a| (|v|^2 + |(omega_ch - omega_is) / 2|^2) at the EP4 (b = 0 and
/// Omega_+ = Omega_-). DomainError away from the EP4.
double chirality_xi4(const ChiralityModelParams& p);

/// Complex fields accept [re, im] or a real number; missing fields keep their defaults.
ToyModelParams toy_params_from_json(const json& j);
ChiralityModelParams chirality_params_from_json(const json& j);
json to_json(const ToyModelParams& p);
json to_json(const ChiralityModelParams& p);

}  // namespace epsrs
