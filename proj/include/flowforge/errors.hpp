#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flowforge {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown vertex/edge ids, malformed arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operation's structural hypothesis does not hold for the input
// (e.g. graph not 2-edge-connected where that is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Something that a theorem guarantees did not happen. Always a bug or a
// counterexample; never swallowed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Prescribed boundary cannot be met (some component's weights do not sum to 0).
class Infeasible : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace flowforge
