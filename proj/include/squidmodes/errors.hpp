#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace squidmodes {

/// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input record violates one of its invariants.
class ParameterError : public Error {
 public:
  ParameterError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class SolverErrorKind {
  kBracketFailure,
  kPoleProximity,
  kNoRootInBracket,
  kNonConvergedTruncation,
  kNonConvergence,
  kAmplitudeOutOfRange,
  kResonance,
  kStepResolution,
  kPositivityLoss,
  kFockOverflow,
  kCflViolation,
  kInstability,
  kInsufficientSamples,
  kDimensionMismatch,
  kDomain,
};

std::string_view to_string(SolverErrorKind kind);

/// A numerical procedure could not produce a trustworthy result.
class SolverError : public Error {
 public:
  SolverError(SolverErrorKind kind, const std::string& message)
      : Error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}
  SolverErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  SolverErrorKind kind_;
  std::string detail_;
};

}  // namespace squidmodes
