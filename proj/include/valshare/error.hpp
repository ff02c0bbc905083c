#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace valshare {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  Range,
  IncommensurableFrequencies,
  NonIntegerRatio,
  BaseMismatch,
  DivisionByZeroPolynomial,
  Syntax,
  UnboundIdentifier,
  Pole,
  DenominatorIdenticallyZero,
  PoleAtAllSamples,
  BoundaryTooClose,
  QuadratureNonConvergent,
  NewtonDivergence,
  NotAnAPoint,
  AmbiguousMultiplicity,
  APointOnCircle,
  ZeroAtOrigin,
  ZeroOnCircle,
  DegenerateFit,
  CharacteristicTooSmall,
  HypothesisFails,
  ZeroParameter,
  InconsistentSystem,
  DegenerateGamma,
  NumericAmbiguity,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the toolkit. The kind is a
/// stable identifier; the message is free text for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error tied to a point of the complex plane (poles, boundary hits, witnesses).
class PointError : public Error {
 public:
  PointError(ErrorKind kind, const std::string& message, std::complex<double> where)
      : Error(kind, message), where_(where) {}

  std::complex<double> where() const noexcept { return where_; }

 private:
  std::complex<double> where_;
};

/// Overflow while evaluating e^{λz}; carries the offending real exponent.
class RangeError : public Error {
 public:
  RangeError(const std::string& message, double exponent)
      : Error(ErrorKind::Range, message), exponent_(exponent) {}

  double exponent() const noexcept { return exponent_; }

 private:
  double exponent_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
      : Error(ErrorKind::Syntax, format(message, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::vector<std::string>& expected);

  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace valshare
