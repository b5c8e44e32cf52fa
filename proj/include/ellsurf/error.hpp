#pragma once

#include <stdexcept>
#include <string>

namespace ellsurf {

/// Named failure modes. Every domain error carries exactly one of these so
/// that reports can name it without parsing messages.
enum class ErrorKind {
  ZeroInput,
  ConstantInput,
  NonIntegral,
  DenominatorVanishes,
  SingularGenericFibre,
  NoSingularFibre,
  ReductionFails,
  BudgetExceeded,
  NotASection,
  TwoTorsionDegenerate,
  BadPrimeRefused,
  ScanExhausted,
  InvalidCover,
  SyntaxError,
  NonPolynomial,
  InvalidInput,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::ConstantInput: return "ConstantInput";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::SingularGenericFibre: return "SingularGenericFibre";
    case ErrorKind::NoSingularFibre: return "NoSingularFibre";
    case ErrorKind::ReductionFails: return "ReductionFails";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::TwoTorsionDegenerate: return "TwoTorsionDegenerate";
    case ErrorKind::BadPrimeRefused: return "BadPrimeRefused";
    case ErrorKind::ScanExhausted: return "ScanExhausted";
    case ErrorKind::InvalidCover: return "InvalidCover";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// A well-formed request the mathematics rejects (CLI exit code 1).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input: bad syntax, bad arguments, unreadable files (exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, ErrorKind kind = ErrorKind::InvalidInput, long offset = -1)
      : std::runtime_error(what), kind_(kind), offset_(offset) {}
  ErrorKind kind() const noexcept { return kind_; }
  /// Byte offset into the parsed expression, or -1.
  long offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  long offset_;
};

/// An internal consistency check failed (exit code 3).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const char* what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace ellsurf
