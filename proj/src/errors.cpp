#include "epdyn/errors.hpp"

namespace epdyn {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NonpositiveProbability: return "NonpositiveProbability";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NearEP: return "NearEP";
    case ErrorKind::RouteValidity: return "RouteValidity";
    case ErrorKind::UnimplementedOrder: return "UnimplementedOrder";
    case ErrorKind::LightConeViolation: return "LightConeViolation";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::StepTooCoarse: return "StepTooCoarse";
  }
  return "Unknown";
}

}  // namespace epdyn
