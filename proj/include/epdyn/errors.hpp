#pragma once

#include <stdexcept>
#include <string>

namespace epdyn {

// Every failure carries a kind; the CLI maps the category to an exit code.
enum class ErrorKind {
  InvalidParameter,
  DomainError,
  DegenerateLeadingCoefficient,
  InsufficientSamples,
  NonpositiveProbability,
  NotClosed,
  NonFinite,
  BudgetExceeded,
  NearEP,
  RouteValidity,
  UnimplementedOrder,
  LightConeViolation,
  BranchAmbiguity,
  StepTooCoarse,
};

enum class ErrorCategory { Validation, Numerical };

inline ErrorCategory category_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::DomainError:
    case ErrorKind::DegenerateLeadingCoefficient:
    case ErrorKind::InsufficientSamples:
    case ErrorKind::NonpositiveProbability:
    case ErrorKind::NotClosed:
    case ErrorKind::RouteValidity:
    case ErrorKind::UnimplementedOrder:
    case ErrorKind::LightConeViolation:
    case ErrorKind::BranchAmbiguity:
      return ErrorCategory::Validation;
    default:
      return ErrorCategory::Numerical;
  }
}

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace epdyn
