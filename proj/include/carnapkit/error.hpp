#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carnap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula, consequence or input file. `position` is a byte offset
/// for formula text and a 1-based line number for files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A structure failed validation on construction (non-poset relation,
/// non-upset, table that is not total, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration bound was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace carnap
