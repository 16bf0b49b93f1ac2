#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdetect {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NoConvergence,
  NotPsd,
  Singular,
  PriorsInvalid,
  SpanDeficient,
  ConditionNotMet,
  NotUnitary,
  NotClosed,
  NoIdentity,
  DuplicateElement,
  GeneratorsNotGu,
  NotPhaseCommuting,
  CountMismatch,
  MaxIterations,
  NumericalBreakdown,
  RecoveryInfeasible,
};

const char* to_string(ErrorCode code);

/// Base of every error raised by the library. The code is stable and
/// machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures caused by the numbers rather than by malformed input.
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, double residual)
      : Error(ErrorCode::NoConvergence, message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SpanDeficientError : public Error {
 public:
  SpanDeficientError(const std::string& message, std::size_t deficiency)
      : Error(ErrorCode::SpanDeficient, message), deficiency_(deficiency) {}
  /// Dimension of the part of the space the states do not reach.
  std::size_t deficiency() const noexcept { return deficiency_; }

 private:
  std::size_t deficiency_;
};

class NotUnitaryError : public Error {
 public:
  NotUnitaryError(const std::string& message, std::size_t index)
      : Error(ErrorCode::NotUnitary, message), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotClosedError : public Error {
 public:
  NotClosedError(const std::string& message, std::size_t left, std::size_t right,
                 double residual)
      : Error(ErrorCode::NotClosed, message), left_(left), right_(right), residual_(residual) {}
  std::size_t left() const noexcept { return left_; }
  std::size_t right() const noexcept { return right_; }
  /// Frobenius distance from the product to its nearest element.
  double residual() const noexcept { return residual_; }

 private:
  std::size_t left_;
  std::size_t right_;
  double residual_;
};

}  // namespace qdetect
