#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hecke {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range user input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An Ostrowski digit could not be decided at the precision cap.
class UndecidableDigit : public Error {
 public:
  using Error::Error;
};

/// A Sturmian letter could not be decided at the precision cap.
class UndecidableLetter : public Error {
 public:
  using Error::Error;
};

/// A word construction would exceed the configured length budget.
class LengthCapExceeded : public Error {
 public:
  LengthCapExceeded(const std::string& what, long last_completed)
      : Error(what), last_completed_(last_completed) {}
  /// Index of the last word family member that was fully built (-1 if none).
  long last_completed() const noexcept { return last_completed_; }

 private:
  long last_completed_;
};

/// Contraction met a non-positive element that no rule can absorb.
class NonPositiveResidual : public Error {
 public:
  using Error::Error;
};

/// The series majorant does not contract, so no tail bound exists.
class NonContracting : public Error {
 public:
  using Error::Error;
};

/// An exponent is too large to materialize an exact power.
class ExponentTooLarge : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree exactly did not. Always a bug.
class InternalCheckFailure : public Error {
 public:
  using Error::Error;
};

/// Throws InternalCheckFailure with `what` unless `ok` holds.
inline void check(bool ok, const char* what) {
  if (!ok) throw InternalCheckFailure(what);
}

}  // namespace hecke
