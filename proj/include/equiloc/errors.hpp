#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace equiloc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RingMismatch : Error {
  using Error::Error;
};

// Poles of a fixed-point sum failed to cancel: the fixed-point data is inconsistent.
struct NotAPolynomial : Error {
  using Error::Error;
};

struct Unsupported : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NotIndefinite : DomainError {
  using DomainError::DomainError;
};

// Symbolic 1/x cancellation or series/direct agreement failed in the Witten integrand.
struct CancellationFailure : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

struct ParseError : InputError {
  ParseError(const std::string& what, int line, int column)
      : InputError(what), line(line), column(column) {}
  int line;
  int column;
};

struct Diagnostic {
  std::string code;
  std::string where;
  std::string message;
};

struct ValidationError : InputError {
  explicit ValidationError(std::vector<Diagnostic> diags);
  std::vector<Diagnostic> diagnostics;
};

}  // namespace equiloc
