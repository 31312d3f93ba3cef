#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kad {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Complement applied to a term that is not test-sorted.
class SortError : public Error {
public:
  using Error::Error;
};

/// Malformed term, program, model, or literal text.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  /// The message without its position prefix.
  [[nodiscard]] const std::string &message() const { return message_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

private:
  static std::string format(const std::string &message, std::size_t line,
                            std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) +
           ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Unbound variables, non-test arguments to complement, sugar left in a term.
class EvalError : public Error {
public:
  using Error::Error;
};

/// A model whose tables violate a structural invariant.
class ModelError : public Error {
public:
  using Error::Error;
};

/// An operation needs a table the algebra does not carry.
class MissingTableError : public Error {
public:
  using Error::Error;
};

/// A size or enumeration bound was exceeded.
class BoundError : public Error {
public:
  using Error::Error;
};

/// An operation's precondition does not hold on its input.
class PreconditionError : public Error {
public:
  using Error::Error;
};

} // namespace kad
