#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vvmf {

enum class ErrorKind {
  NomeMismatch,
  NonIntegralExponentGap,
  NonUnitLeadingCoefficient,
  NonMonicLeadingCoefficient,
  ZeroLeadingCoefficient,
  WrongNome,
  InconsistentRep,
  GroupMismatch,
  WrongRank,
  NonIntegralThreeTrace,
  TraceDCongruenceViolation,
  ExponentSumMismatch,
  DegenerateC,
  NotAnExponent,
  Resonance,
  NotLeftEigenvector,
  PoleInC,
  ZeroForm,
  ReducibleRep,
  ResonantExponents,
  NotIrreducible,
  DegenerateU,
  NormalizationError,
  ValidationError,
  IOError,
};

std::string_view kind_name(ErrorKind kind);

// Every failure raised by the library. `step` is one of 'a'..'f' when the
// error was raised inside the rank-4 pipeline, 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, char step = 0);

  ErrorKind kind() const { return kind_; }
  char step() const { return step_; }
  const std::string& detail() const { return detail_; }

  Error at_step(char step) const { return Error(kind_, detail_, step); }

 private:
  ErrorKind kind_;
  std::string detail_;
  char step_;
};

// Runs `fn`, re-throwing any library error tagged with the pipeline step.
template <class Fn>
auto in_step(char step, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.step() != 0) throw;
    throw e.at_step(step);
  }
}

}  // namespace vvmf
