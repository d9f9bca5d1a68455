#pragma once

#include <stdexcept>
#include <string>

namespace cofill {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A walk, translate or target left the finite ball.
class EscapesBall : public Error {
 public:
  using Error::Error;
};

class NotARelation : public Error {
 public:
  using Error::Error;
};

class InvalidOracle : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// dt = u has no solution even without bounds.
class NotExact : public Error {
 public:
  using Error::Error;
};

}  // namespace cofill
