#ifndef DISSENT_ERROR_H_
#define DISSENT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dissent {

// Base of every error raised by the library. The CLI maps subclasses to
// exit codes, so keep the hierarchy flat and specific.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors tied to a line of some input file carry its 1-based number.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DecodeError : public InputError {
 public:
  using InputError::InputError;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class RangeError : public InputError {
 public:
  using InputError::InputError;
};

class EmptyPostError : public InputError {
 public:
  using InputError::InputError;
};

class DuplicateIdError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownClassError : public InputError {
 public:
  using InputError::InputError;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ExplosionError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyTestError : public Error {
 public:
  using Error::Error;
};

}  // namespace dissent

#endif  // DISSENT_ERROR_H_
