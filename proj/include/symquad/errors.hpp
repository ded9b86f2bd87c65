#pragma once

#include <stdexcept>
#include <string>

namespace symquad {

/// Base class for all library errors. Every error carries a short
/// machine-parsable reason code (e.g. "singular-system") next to the
/// human-readable message; the CLI prints the code and maps the error
/// category to its exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Bad inputs: invalid dimensions, caps exceeded, malformed configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures: singular systems, non-finite evaluations,
/// bracket failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File and serialization failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace symquad
