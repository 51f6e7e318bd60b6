#pragma once

#include <stdexcept>
#include <string>

namespace epsrs {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition. The CLI maps this to exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public InputError {
public:
    using InputError::InputError;
};

/// Failure of a numerical procedure on valid input. The CLI maps this to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Iteration cap reached (QR, Jacobi sweeps, quadrature doubling).
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Matrix singular to working precision.
class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : NumericalError(what), pivot_(pivot) {}

    /// Modulus of the offending pivot.
    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

/// Jordan order of a cluster cannot be decided from the rank tests.
class AmbiguousOrderError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The m = n nilpotency test failed.
class NotAnEpError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Eigenstate is defective: left/right overlap vanishes and the Petermann factor diverges.
class AtEpError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Integration circle does not isolate the requested cluster.
class ContourError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Perturbed cluster members cannot be told apart from foreign eigenvalues.
class SeparationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Search window does not bracket the requested level.
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace epsrs
