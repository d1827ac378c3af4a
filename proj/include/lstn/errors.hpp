#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lstn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: unknown variable or option, malformed environment,
/// out-of-range vertex id.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An enumeration or fixed-capacity structure would exceed its configured cap.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// Something that the algorithms guarantee cannot happen did happen.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lstn
