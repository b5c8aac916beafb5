#pragma once

#include <stdexcept>
#include <string>

namespace jetlag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { Syntax, UnknownIdentifier, IndexOutOfRange, NonConstantExponent };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

/// Evaluation outside the domain of a subexpression (log of a nonpositive
/// number, division by zero, ...). `subexpression()` is the printed offender.
class DomainError : public Error {
 public:
  DomainError(const std::string& reason, std::string subexpression)
      : Error(reason + " in `" + subexpression + "`"), subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Requested derivative order exceeds the configured cap.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// The vertical Hessian of the Lagrangian is degenerate (or not symmetric).
class NonRegularError : public Error {
 public:
  using Error::Error;
};

/// Mismatched slot signatures, extents or variances.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a numerical routine (bad step, bad chart map, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace jetlag
