#pragma once

#include <stdexcept>
#include <string>

namespace rpclust {

// Shapes that do not fit together (d > m, p > m, mismatched ambient dims).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed user input: zero columns, bad labels, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rank-deficient bases where a pseudo-inverse is required.
class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver or LP failures.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV parse failures. Carries 1-based row (and column when known).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long row, long column = -1)
      : std::runtime_error(what), row_(row), column_(column) {}
  long row() const { return row_; }
  long column() const { return column_; }

 private:
  long row_;
  long column_;
};

}  // namespace rpclust
