#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uplab {

/// Machine-readable failure categories. The names are part of the CLI's
/// JSON error surface, so keep error_name() in sync.
enum class ErrorCode {
  CompositeCharacteristic,
  DegreeZero,
  NoEmbedding,
  RationalField,
  ZeroPolynomial,
  FieldMismatch,
  FieldTooLarge,
  CurveInPlane,
  IncompleteSection,
  PointOffPlane,
  GenericityExhausted,
  EmptyConfiguration,
  InconsistentInput,
  BudgetExceeded,
  NotASubset,
  EmptySystem,
  SubstitutionExhausted,
  InvalidParameters,
  DependentSample,
  InvalidInput,
  Usage,
};

constexpr std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::CompositeCharacteristic: return "CompositeCharacteristic";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::NoEmbedding: return "NoEmbedding";
    case ErrorCode::RationalField: return "RationalField";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::CurveInPlane: return "CurveInPlane";
    case ErrorCode::IncompleteSection: return "IncompleteSection";
    case ErrorCode::PointOffPlane: return "PointOffPlane";
    case ErrorCode::GenericityExhausted: return "GenericityExhausted";
    case ErrorCode::EmptyConfiguration: return "EmptyConfiguration";
    case ErrorCode::InconsistentInput: return "InconsistentInput";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::SubstitutionExhausted: return "SubstitutionExhausted";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::DependentSample: return "DependentSample";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace uplab
