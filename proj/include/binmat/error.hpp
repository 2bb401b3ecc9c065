#pragma once

#include <stdexcept>
#include <string>

namespace binmat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range index, unknown label, bad file contents.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search guard would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the called operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The request is valid but outside what this implementation handles.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

/// A separation search ran out of its node or time budget before reaching
/// a verdict. Distinct from a negative answer.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace binmat
