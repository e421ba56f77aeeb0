#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curvel2 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inadmissible input (parse errors, violated preconditions).
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical step could not be completed (factorization failure,
/// inconsistent genus, ...). The CLI maps these to exit code 1.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Raised when a computed quantity cannot be decided from the series
/// terms available at the current truncation order.
class TruncationError : public MathError {
 public:
  explicit TruncationError(const std::string& what)
      : MathError("indeterminate at this truncation: " + what) {}
};

/// Itemized validation failure.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace curvel2
