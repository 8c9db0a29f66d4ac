#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualcx {

enum class ErrorKind {
  ValidationFailed,
  DimensionOutOfRange,
  EmptyComplex,
  NotConnected,
  NotPseudoManifold,
  NotClosedPseudoManifold,
  NotOrientable,
  CriterionDisagreement,
  NotRegularAction,
  RegularizationFailed,
  NoSolutionFound,
  AssertionFailure,
  BadRational,
  BoundTooSmall,
  ParseError,
  UnknownConstructor,
  BadParams,
  Overflow,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ValidationFailed: return "ValidationError";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::EmptyComplex: return "EmptyComplex";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotPseudoManifold: return "NotPseudoManifold";
    case ErrorKind::NotClosedPseudoManifold: return "NotClosedPseudoManifold";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::CriterionDisagreement: return "CriterionDisagreement";
    case ErrorKind::NotRegularAction: return "NotRegularAction";
    case ErrorKind::RegularizationFailed: return "RegularizationFailed";
    case ErrorKind::NoSolutionFound: return "NoSolutionFound";
    case ErrorKind::AssertionFailure: return "AssertionFailure";
    case ErrorKind::BadRational: return "BadRational";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownConstructor: return "UnknownConstructor";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dualcx
