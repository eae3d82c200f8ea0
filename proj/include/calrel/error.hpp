#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace calrel {

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or structure text. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The operation is not defined for the requested fragment
/// (bisimulations need complement or difference, simulations need neither).
class WrongFragment : public Error {
 public:
  using Error::Error;
};

/// A characteristic-expression subset enumeration exceeded its configured cap.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

class UnknownRelation : public Error {
 public:
  explicit UnknownRelation(const std::string& name) : Error("unknown relation name '" + name + "'") {}
};

}  // namespace calrel
