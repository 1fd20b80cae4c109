#ifndef AINFTY_ERROR_HPP
#define AINFTY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ainfty {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  NotPrime,
  ArityMismatch,
  SpaceMismatch,
  DegreeMismatch,
  NotInvertible,
  NotADifferential,
  NotARetract,
  NotADgAlgebra,
  RetractMismatch,
  FormalSymbolApplied,
  NotWeightDecreasing,
  UnitViolation,
  ParseError,
  SemanticError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole engine; `kind()` identifies the
/// contract violation so tests can assert on it.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ainfty

#endif
