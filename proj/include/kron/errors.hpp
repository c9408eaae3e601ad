#pragma once

#include <stdexcept>
#include <string>

namespace kron {

/// Base class of all errors thrown by this library.  The what() string of
/// every subclass starts with the error's class name so that command-line
/// diagnostics can name the failing check in one line.
struct Error : std::runtime_error {
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define KRON_DEFINE_ERROR(NAME)                              \
  struct NAME : Error {                                      \
    explicit NAME(const std::string& detail)                 \
        : Error(std::string(#NAME) + ": " + detail) {}       \
  }

/// Operands have incompatible dimensions (or incompatible fields).
KRON_DEFINE_ERROR(ShapeMismatch);
/// A square matrix required to be invertible is singular.
KRON_DEFINE_ERROR(SingularMatrix);
/// A full-rank factorization was requested of a rank-deficient matrix.
KRON_DEFINE_ERROR(RankDeficient);
/// Structured input (multiplicity/index lists, block data) breaks a
/// documented shape constraint.
KRON_DEFINE_ERROR(InvalidShape);
/// A pencil carries Kronecker invariants other than column minimal indices.
KRON_DEFINE_ERROR(NotColumnMinimalOnly);
/// A pencil carries Kronecker invariants other than row minimal indices.
KRON_DEFINE_ERROR(NotRowMinimalOnly);
/// The subpencil relation does not hold, so no completion exists.
KRON_DEFINE_ERROR(NotSubpencil);
/// No injective morphism exists between the given modules.
KRON_DEFINE_ERROR(NoMonomorphism);
/// No surjective morphism with the requested kernel exists.
KRON_DEFINE_ERROR(NoEpimorphism);
/// A constructor exhausted its retry budget; indicates an implementation
/// bug rather than a mathematical obstruction.
KRON_DEFINE_ERROR(ConstructionFailed);
/// A brute-force search exceeded its configured budget.
KRON_DEFINE_ERROR(BudgetExceeded);
/// Text input could not be parsed as the requested exact value.
KRON_DEFINE_ERROR(ParseError);
/// An internal exactness re-check failed; indicates an implementation bug.
KRON_DEFINE_ERROR(VerificationFailed);

#undef KRON_DEFINE_ERROR

}  // namespace kron
