#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projsem {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed program or specification text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A recursive specification that is unguarded, incomplete, or queried at a
/// variable it does not define.
class SpecError : public Error {
 public:
  SpecError(const std::string& message, std::string variable)
      : Error(message), variable_(std::move(variable)) {}

  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

/// A well-formed program that is not acceptable in context: wrong notation
/// for the operation, a register index outside [1,maxr], a reserved focus.
class ProgramError : public Error {
 public:
  using Error::Error;
};

}  // namespace projsem
