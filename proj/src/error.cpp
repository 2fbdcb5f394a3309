#include "exnet/error.hpp"

namespace exnet {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::NotAnEdge: return "NotAnEdge";
        case ErrorKind::Unclassifiable: return "Unclassifiable";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::KinkPoint: return "KinkPoint";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::BadOverride: return "BadOverride";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::WrongActivation: return "WrongActivation";
        case ErrorKind::SingularJacobian: return "SingularJacobian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::EquilibriumMissing: return "EquilibriumMissing";
        case ErrorKind::BracketInvalid: return "BracketInvalid";
        case ErrorKind::NoExtrema: return "NoExtrema";
        case ErrorKind::NoOscillation: return "NoOscillation";
        case ErrorKind::NotPeriodic: return "NotPeriodic";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace exnet
