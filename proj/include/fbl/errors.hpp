#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fbl {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configured size guard (forms, hyperplanes, net points, iterations) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (non-disjoint family, empty set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace fbl
