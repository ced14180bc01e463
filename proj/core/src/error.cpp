#include "qcorr/error.hpp"

namespace qcorr {

std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidMeasurement: return "InvalidMeasurement";
    case ErrorCode::InvalidBox: return "InvalidBox";
    case ErrorCode::InvalidAssemblage: return "InvalidAssemblage";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::SingularMarginal: return "SingularMarginal";
    case ErrorCode::UnsupportedScenario: return "UnsupportedScenario";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SolverFailure: return "SolverFailure";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    return code != ErrorCode::SolverFailure && code != ErrorCode::UnsupportedScenario;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace qcorr
