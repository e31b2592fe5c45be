#pragma once

#include <stdexcept>
#include <string>

namespace numasched {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions or argument values that violate an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configuration the requested algorithm does not handle (e.g. odd K for
/// the sorted-pairs grouping).
class UnsupportedConfig : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search requested beyond its enumeration bound.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Malformed trace file or other serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace numasched
