#pragma once

#include <stdexcept>
#include <string>

namespace pnforge {

enum class ErrorKind {
    InvalidInput,
    ZeroPolynomial,
    DegreeTooSmall,
    NonAffineDependence,
    Inconsistent,
    DimensionMismatch,
    DegenerateFrame,
    NotOrthogonal,
    AtCenter,
    NoSafeCenter,
    IrrationalIsotropics,
    NoRealIsotropics,
    NotProportional,
    NotMOS,
    DegenerateMedial,
    ConstraintNotSatisfied,
    OptimizerDiverged,
    InvariantViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pnforge
