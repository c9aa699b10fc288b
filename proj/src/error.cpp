#include "pnforge/error.hpp"

namespace pnforge {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorKind::NonAffineDependence: return "NonAffineDependence";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DegenerateFrame: return "DegenerateFrame";
        case ErrorKind::NotOrthogonal: return "NotOrthogonal";
        case ErrorKind::AtCenter: return "AtCenter";
        case ErrorKind::NoSafeCenter: return "NoSafeCenter";
        case ErrorKind::IrrationalIsotropics: return "IrrationalIsotropics";
        case ErrorKind::NoRealIsotropics: return "NoRealIsotropics";
        case ErrorKind::NotProportional: return "NotProportional";
        case ErrorKind::NotMOS: return "NotMOS";
        case ErrorKind::DegenerateMedial: return "DegenerateMedial";
        case ErrorKind::ConstraintNotSatisfied: return "ConstraintNotSatisfied";
        case ErrorKind::OptimizerDiverged: return "OptimizerDiverged";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace pnforge
