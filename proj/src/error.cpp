#include "exwlex/error.hpp"

#include "exwlex/search.hpp"

namespace exwlex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::BadComposite: return "BadComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::IdentityLawViolation: return "IdentityLawViolation";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::NotACongruence: return "NotACongruence";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DoesNotExist: return "DoesNotExist";
    case ErrorKind::NoWeakPullback: return "NoWeakPullback";
    case ErrorKind::NotWeaklyLex: return "NotWeaklyLex";
    case ErrorKind::NoBinaryProducts: return "NoBinaryProducts";
    case ErrorKind::NoCover: return "NoCover";
    case ErrorKind::NoFullDiagram: return "NoFullDiagram";
    case ErrorKind::CriterionCheckFailed: return "CriterionCheckFailed";
    case ErrorKind::NoTerminalObject: return "NoTerminalObject";
    case ErrorKind::ClassNotClosed: return "ClassNotClosed";
    case ErrorKind::TwoOutOfSixViolation: return "TwoOutOfSixViolation";
    case ErrorKind::TerminalArrowNotFibration: return "TerminalArrowNotFibration";
    case ErrorKind::MissingPullbackAlongFibration: return "MissingPullbackAlongFibration";
    case ErrorKind::NotPullbackStable: return "NotPullbackStable";
    case ErrorKind::MissingSection: return "MissingSection";
    case ErrorKind::MissingPathObject: return "MissingPathObject";
    case ErrorKind::BadPathObject: return "BadPathObject";
    case ErrorKind::MissingFibrewisePathObject: return "MissingFibrewisePathObject";
    case ErrorKind::NoStrictification: return "NoStrictification";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::NoFiller: return "NoFiller";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::string> witnesses)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), witnesses_(std::move(witnesses)) {}

void fail(ErrorKind kind, const std::string& message, std::vector<std::string> witnesses) {
  throw Error(kind, message, std::move(witnesses));
}

void SearchMeter::charge(std::uint64_t n) {
  std::uint64_t now = used_.fetch_add(n, std::memory_order_relaxed) + n;
  if (now > budget_) fail(ErrorKind::BudgetExceeded, "search budget of " + std::to_string(budget_) + " steps exceeded");
}

}  // namespace exwlex
