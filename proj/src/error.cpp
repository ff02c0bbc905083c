#include "valshare/error.hpp"

namespace valshare {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::IncommensurableFrequencies: return "IncommensurableFrequencies";
    case ErrorKind::NonIntegerRatio: return "NonIntegerRatio";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::Pole: return "Pole";
    case ErrorKind::DenominatorIdenticallyZero: return "DenominatorIdenticallyZero";
    case ErrorKind::PoleAtAllSamples: return "PoleAtAllSamples";
    case ErrorKind::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorKind::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::NotAnAPoint: return "NotAnAPoint";
    case ErrorKind::AmbiguousMultiplicity: return "AmbiguousMultiplicity";
    case ErrorKind::APointOnCircle: return "APointOnCircle";
    case ErrorKind::ZeroAtOrigin: return "ZeroAtOrigin";
    case ErrorKind::ZeroOnCircle: return "ZeroOnCircle";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::DegenerateGamma: return "DegenerateGamma";
    case ErrorKind::NumericAmbiguity: return "NumericAmbiguity";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

std::string ParseError::format(const std::string& message, int line, int column,
                               const std::vector<std::string>& expected) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected one of:";
    for (const auto& e : expected) out += " " + e;
    out += ")";
  }
  return out;
}

}  // namespace valshare
