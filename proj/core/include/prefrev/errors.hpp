#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prefrev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula, schema, preference file or CSV. `position` is a byte
/// offset into the parsed text (or a 1-based line number for line-oriented
/// inputs, see `line`).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(what), position_(position), line_(line) {}
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

/// Tuple or relation does not conform to the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Input outside the supported constraint classes (equality on D, dense
/// order on Q).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Transitive-closure fixpoint did not stabilize within the iteration cap.
class IterationCapError : public Error {
 public:
  IterationCapError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

/// A documented precondition of an algorithm does not hold (e.g. BNL winnow
/// run on a relation with a dominance cycle).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace prefrev
