#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcdpst {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation was called on a ring that lacks the required structure
/// (e.g. not local, residue field not F_2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (ring order, subset count, matrix size) was exceeded.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagreed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcdpst
