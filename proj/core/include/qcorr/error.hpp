#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorCode {
    NotHermitian,
    NotUnitTrace,
    NotPSD,
    WrongDimension,
    DomainError,
    InvalidMeasurement,
    InvalidBox,
    InvalidAssemblage,
    DegenerateOutcome,
    SingularMarginal,
    UnsupportedScenario,
    UnknownId,
    BadParams,
    BadGrid,
    ParseError,
    SolverFailure,
};

std::string_view error_name(ErrorCode code);

// Validation errors map to CLI exit code 1, solver failures to 2.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qcorr
