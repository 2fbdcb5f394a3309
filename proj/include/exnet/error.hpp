#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exnet {

/// Failure categories raised by the library. Validation routines report
/// rather than throw; everything else signals contract violations here.
enum class ErrorKind {
    ConstraintViolation,
    NotAnEdge,
    Unclassifiable,
    GenerationFailed,
    KinkPoint,
    DomainError,
    BadOverride,
    DimensionMismatch,
    NonFiniteState,
    WrongActivation,
    SingularJacobian,
    NoConvergence,
    EquilibriumMissing,
    BracketInvalid,
    NoExtrema,
    NoOscillation,
    NotPeriodic,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace exnet
