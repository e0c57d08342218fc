#pragma once

#include <stdexcept>
#include <string>

namespace afflats {

// Base for every failure raised by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidElement : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Raised when an exhaustive scan would exceed the enumeration budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string estimate)
      : Error(what), estimate_(std::move(estimate)) {}
  const std::string& estimate() const noexcept { return estimate_; }

 private:
  std::string estimate_;
};

}  // namespace afflats
