#include "greensign/error.hpp"

namespace greensign {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResonantPotential: return "ResonantPotential";
    case ErrorCode::IntegratorFailure: return "IntegratorFailure";
    case ErrorCode::BracketingFailure: return "BracketingFailure";
    case ErrorCode::Undetermined: return "Undetermined";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NonpositiveWeightedIntegral: return "NonpositiveWeightedIntegral";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::UnsupportedBoundaryKind: return "UnsupportedBoundaryKind";
    case ErrorCode::NonpositiveEta: return "NonpositiveEta";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace greensign
