#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exwlex {

enum class ErrorKind {
  InvalidInput,
  UnsupportedFormat,
  DuplicateId,
  UnknownObject,
  UnknownMorphism,
  MissingComposite,
  BadComposite,
  NonAssociative,
  IdentityLawViolation,
  NotAFunctor,
  NotACongruence,
  BudgetExceeded,
  DoesNotExist,
  NoWeakPullback,
  NotWeaklyLex,
  NoBinaryProducts,
  NoCover,
  NoFullDiagram,
  CriterionCheckFailed,
  // path-category axioms
  NoTerminalObject,
  ClassNotClosed,
  TwoOutOfSixViolation,
  TerminalArrowNotFibration,
  MissingPullbackAlongFibration,
  NotPullbackStable,
  MissingSection,
  MissingPathObject,
  BadPathObject,
  MissingFibrewisePathObject,
  NoStrictification,
  NoFactorization,
  NoFiller,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine. `witnesses` carries the offending ids
/// (external names) so reports can show them without re-parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::string> witnesses = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witnesses_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::vector<std::string> witnesses = {});

}  // namespace exwlex
