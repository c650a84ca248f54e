#include "vvmf/error.hpp"

namespace vvmf {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NomeMismatch: return "NomeMismatch";
    case ErrorKind::NonIntegralExponentGap: return "NonIntegralExponentGap";
    case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorKind::NonMonicLeadingCoefficient: return "NonMonicLeadingCoefficient";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::WrongNome: return "WrongNome";
    case ErrorKind::InconsistentRep: return "InconsistentRep";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::NonIntegralThreeTrace: return "NonIntegralThreeTrace";
    case ErrorKind::TraceDCongruenceViolation: return "TraceDCongruenceViolation";
    case ErrorKind::ExponentSumMismatch: return "ExponentSumMismatch";
    case ErrorKind::DegenerateC: return "DegenerateC";
    case ErrorKind::NotAnExponent: return "NotAnExponent";
    case ErrorKind::Resonance: return "Resonance";
    case ErrorKind::NotLeftEigenvector: return "NotLeftEigenvector";
    case ErrorKind::PoleInC: return "PoleInC";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::ReducibleRep: return "ReducibleRep";
    case ErrorKind::ResonantExponents: return "ResonantExponents";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::DegenerateU: return "DegenerateU";
    case ErrorKind::NormalizationError: return "NormalizationError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IOError: return "IOError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& detail, char step) {
  std::string msg;
  if (step != 0) {
    msg += "step (";
    msg += step;
    msg += "): ";
  }
  msg += kind_name(kind);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& detail, char step)
    : std::runtime_error(format_message(kind, detail, step)),
      kind_(kind),
      detail_(detail),
      step_(step) {}

}  // namespace vvmf
