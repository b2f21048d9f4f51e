#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace supergeom {

enum class ErrorKind {
  RankMismatch,
  IndexOutOfRange,
  DuplicateIndex,
  UnsortedIndex,
  RankTooLarge,
  ZeroBody,
  FlavorMismatch,
  DimMismatch,
  NotInvertible,
  OutOfDomain,
  NoConvergence,
  MixedParity,
  NotEven,
  LambdaNotIso,
  ParityPattern,
  NotCompatible,
  InvalidReduction,
  NerveMismatch,
  UnknownChart,
  InvalidNerve,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace supergeom
