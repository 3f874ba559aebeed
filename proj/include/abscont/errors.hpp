#pragma once

#include <stdexcept>
#include <string>

namespace abscont {

/// Base class for all computational failures raised by this library.
/// `code()` is stable and machine-readable; the CLI maps it into error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// A precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

/// Root iteration failed to converge; raise the working precision and retry.
class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what) : Error("non_convergence", what) {}
};

/// A candidate factor looked integral but exact division kept failing after
/// the precision was doubled.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error("precision_exhausted", what) {}
};

/// Every rescaling attempt of the Schur-Cohn transform hit T(0) = 0.
class DegenerateTransform : public Error {
public:
    explicit DegenerateTransform(const std::string& what) : Error("degenerate_transform", what) {}
};

/// A root lies too close to the counting circle for a reliable verdict.
class BoundaryRoot : public Error {
public:
    explicit BoundaryRoot(const std::string& what) : Error("boundary_root", what) {}
};

class NotPrime : public Error {
public:
    explicit NotPrime(const std::string& what) : Error("not_prime", what) {}
};

/// Prime fails the p = 3 (mod 4) requirement of the Gaussian-integer family.
class BadPrime : public Error {
public:
    explicit BadPrime(const std::string& what) : Error("bad_prime", what) {}
};

/// Atom budget or quadrature evaluation budget exceeded.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error("budget_exceeded", what) {}
};

/// Support expansion exceeded the atom budget or an exact coordinate left
/// the machine-integer range.
class Overflow : public Error {
public:
    explicit Overflow(const std::string& what) : Error("overflow", what) {}
};

/// Exact arithmetic mode is unavailable for the requested computation.
class InexactMode : public Error {
public:
    explicit InexactMode(const std::string& what) : Error("inexact_mode", what) {}
};

/// Bracketing for a root sign change failed (malformed input).
class NoBracket : public Error {
public:
    explicit NoBracket(const std::string& what) : Error("no_bracket", what) {}
};

/// Degenerate geometric input (e.g. a single-point support).
class Degenerate : public Error {
public:
    explicit Degenerate(const std::string& what) : Error("degenerate", what) {}
};

} // namespace abscont
