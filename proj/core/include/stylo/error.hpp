#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stylo {

// Every failure raised by the library derives from Error. The CLI maps the
// subclasses onto exit statuses: validation 1, runtime/IO 2, degenerate data 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that breaks a documented schema or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; carries the 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller broke an operation's precondition (e.g. unique count > total count).
class ContractError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// The data is well-formed but cannot support the requested computation,
// e.g. a single-class corpus handed to a classifier.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace stylo
