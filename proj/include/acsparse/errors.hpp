#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acsparse {

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidEdgeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Selection vectors that violate the box or budget constraint.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// A problem whose fixed + candidate edges cannot yield a connected graph
// within the budget.
class InfeasibleProblemError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class OracleRefused : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedTypeError : public ParseError {
 public:
  using ParseError::ParseError;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

}  // namespace acsparse
